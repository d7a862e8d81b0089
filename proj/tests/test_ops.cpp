#include <catch2/catch.hpp>

#include <set>

#include "helpers.hpp"
#include "wad/error.hpp"
#include "wad/ops.hpp"

using namespace wad;
using namespace wadtest;

namespace {

std::set<Word> words_of(const DiagramTable& t, NodeId q, std::size_t n) {
    const auto v = t.enumerate(q, n);
    return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("base cases", "[ops]") {
    DiagramTable t(abc());
    const NodeId k = compile(t, kK);
    CHECK(complement(t, kEmpty) == kUniversal);
    CHECK(complement(t, kUniversal) == kEmpty);
    CHECK(intersect(t, k, kUniversal) == k);
    CHECK(intersect(t, k, kEmpty) == kEmpty);
    CHECK(unite(t, k, kEmpty) == k);
    CHECK(unite(t, k, kUniversal) == kUniversal);
    CHECK(unite(t, k, complement(t, k)) == kUniversal);
    CHECK(intersect(t, k, complement(t, k)) == kEmpty);
    CHECK(difference(t, k, k) == kEmpty);
    CHECK(difference(t, k, kEmpty) == k);
    CHECK(difference(t, kUniversal, k) == complement(t, k));
}

TEST_CASE("complement of K by brute force", "[ops]") {
    DiagramTable t(abc());
    const NodeId k = compile(t, kK);
    const NodeId c = complement(t, k);
    const auto in_k = words_of(t, k, 3);
    std::set<Word> expect;
    for (const auto& w : all_words(3, 3)) {
        if (in_k.count(w) == 0) {
            expect.insert(w);
        }
    }
    CHECK(words_of(t, c, 3) == expect);
    CHECK(complement(t, c) == k);
}

TEST_CASE("K and L against the product oracle", "[ops]") {
    DiagramTable t(abc());
    const auto ek = parse_expr(kK, t.alphabet());
    const auto el = parse_expr(kL, t.alphabet());
    const NodeId k = compile_expr(t, ek);
    const NodeId l = compile_expr(t, el);
    const auto dk = oracle_dfa(ek, 3);
    const auto dl = oracle_dfa(el, 3);
    CHECK(same_language(t, intersect(t, k, l), product_dfa(dk, dl, true)));
    CHECK(same_language(t, unite(t, k, l), product_dfa(dk, dl, false)));
    CHECK(same_language(t, complement(t, k), complement_dfa(dk)));
}

TEST_CASE("Boolean operations match the oracle", "[ops][property]") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        DiagramTable t(abc());
        const auto e1 = random_expr(t.alphabet(), 4, 2 * seed);
        const auto e2 = random_expr(t.alphabet(), 4, 2 * seed + 1);
        const NodeId p = compile_expr(t, e1);
        const NodeId q = compile_expr(t, e2);
        const auto d1 = oracle_dfa(e1, 3);
        const auto d2 = oracle_dfa(e2, 3);
        REQUIRE(same_language(t, complement(t, p), complement_dfa(d1)));
        REQUIRE(same_language(t, intersect(t, p, q), product_dfa(d1, d2, true)));
        REQUIRE(same_language(t, unite(t, p, q), product_dfa(d1, d2, false)));
        REQUIRE(intersect(t, p, q) == intersect(t, q, p));
        REQUIRE(unite(t, p, q) == unite(t, q, p));
        REQUIRE(complement(t, intersect(t, p, q)) == unite(t, complement(t, p), complement(t, q)));
        REQUIRE(difference(t, p, q) == intersect(t, p, complement(t, q)));
        t.check_invariants();
    }
}

TEST_CASE("expansions stay within the product bounds", "[ops][property]") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        DiagramTable t(abc());
        const NodeId p = compile_expr(t, random_expr(t.alphabet(), 5, 3 * seed));
        const NodeId q = compile_expr(t, random_expr(t.alphabet(), 5, 3 * seed + 1));
        const std::size_t np = t.reachable_count(p);
        const std::size_t nq = t.reachable_count(q);
        auto before = t.counters();
        complement(t, q);
        REQUIRE(t.counters().complement_expansions - before.complement_expansions <= nq);
        before = t.counters();
        intersect(t, p, q);
        REQUIRE(t.counters().intersect_expansions - before.intersect_expansions <= np * nq);
        before = t.counters();
        unite(t, p, q);
        REQUIRE(t.counters().union_expansions - before.union_expansions <= np * nq);
    }
}

TEST_CASE("letter closure", "[ops]") {
    DiagramTable t(abc());
    const Letter x = 2;
    const NodeId q = compile(t, "[]* a [c]* b []*");
    const NodeId c = letter_closure(t, q, x).node;
    CHECK(t.member(c, "a b"));
    CHECK(t.member(c, "c a c c b c"));
    CHECK_FALSE(t.member(c, "a a b"));
    CHECK(letter_closure(t, c, x).node == c);
    CHECK(letter_closure(t, kEmpty, x).node == kEmpty);
    CHECK(letter_closure(t, kUniversal, x).node == kUniversal);
    CHECK_THROWS_AS(letter_closure(t, q, 3), InputError);
}

TEST_CASE("letter closure ignores the letter", "[ops][property]") {
    const Letter x = 2;
    // x as an ε-move on the explicit DFA, plus an x-self-loop everywhere.
    auto closure_dfa = [&](const ExplicitDfa& d) {
        auto reach = [&](State q) {
            std::set<State> out{q};
            while (d.next(q, x) != q) {
                q = d.next(q, x);
                out.insert(q);
            }
            return out;
        };
        ExplicitNfa n(d.letters);
        for (State q = 0; q < d.size(); ++q) {
            bool accept = false;
            for (State r : reach(q)) {
                accept = accept || d.accepting[r] != 0;
            }
            n.add_state(accept);
        }
        for (State q = 0; q < d.size(); ++q) {
            n.add(q, x, q);
            for (State r : reach(q)) {
                for (Letter a = 0; a < d.letters; ++a) {
                    if (a != x) {
                        n.add(q, a, d.next(r, a));
                    }
                }
            }
        }
        n.initial = {d.initial};
        return minimize(determinize(n));
    };
    int contracted = 0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        DiagramTable t(abc());
        const NodeId q = compile_expr(t, random_expr(t.alphabet(), 4, seed));
        const ClosureResult c = letter_closure(t, q, x);
        const ExplicitDfa expect = closure_dfa(dfa_from_wad(t, q));
        contracted += c.contracted ? 1 : 0;
        if (is_weakly_acyclic(expect)) {
            REQUIRE(same_language(t, c.node, expect));
        } else {
            REQUIRE(c.contracted);
        }
        t.check_invariants();
    }
    CHECK(contracted < 30);
}
