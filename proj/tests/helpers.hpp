#pragma once

#include <random>
#include <string>
#include <vector>

#include "wad/alphabet.hpp"
#include "wad/expr.hpp"
#include "wad/model_file.hpp"
#include "wad/oracle.hpp"
#include "wad/table.hpp"
#include "wad/transducer.hpp"

namespace wadtest {

inline const char* kK = "[a]* + [a]* b [b]* a [a b c]*";
inline const char* kL = "[]* a ([b]* a [a b c]*) + []* b [a b c]* + []* c [a b c]*";

inline wad::Alphabet abc() { return wad::Alphabet({"a", "b", "c"}); }
inline wad::Alphabet ab() { return wad::Alphabet({"a", "b"}); }

inline wad::NodeId compile(wad::DiagramTable& t, const std::string& text) {
    return wad::compile_expr(t, wad::parse_expr(text, t.alphabet()));
}

/// Every word of length <= maxlen over `letters` letters, shortlex.
inline std::vector<wad::Word> all_words(std::size_t letters, std::size_t maxlen) {
    std::vector<wad::Word> out{{}};
    std::size_t from = 0;
    for (std::size_t len = 1; len <= maxlen; ++len) {
        const std::size_t to = out.size();
        for (std::size_t i = from; i < to; ++i) {
            for (wad::Letter a = 0; a < letters; ++a) {
                wad::Word w = out[i];
                w.push_back(a);
                out.push_back(std::move(w));
            }
        }
        from = to;
    }
    return out;
}

inline wad::ExplicitDfa oracle_dfa(const wad::WaExpression& e, std::size_t letters) {
    return wad::minimize(wad::determinize(wad::nfa_from_expr(e, letters)));
}

inline bool same_language(const wad::DiagramTable& t, wad::NodeId q, const wad::ExplicitDfa& d) {
    return wad::equivalent(wad::dfa_from_wad(t, q), d);
}

/// A minimal weakly acyclic DFA over {a, b}.
inline wad::ExplicitDfa five_state_dfa() {
    wad::ExplicitDfa d(2);
    for (int i = 0; i < 5; ++i) {
        d.add_state(i == 1 || i == 2);
    }
    d.set(0, 0, 1);
    d.set(0, 1, 4);
    d.set(1, 0, 2);
    d.set(1, 1, 1);
    d.set(2, 0, 3);
    d.set(2, 1, 2);
    d.set(3, 0, 3);
    d.set(3, 1, 3);
    d.set(4, 0, 2);
    d.set(4, 1, 3);
    return d;
}

/// Minimal DFA of (a+b)*b.
inline wad::ExplicitDfa ends_with_b() {
    wad::ExplicitDfa d(2);
    d.add_state(false);
    d.add_state(true);
    d.set(0, 0, 0);
    d.set(0, 1, 1);
    d.set(1, 0, 0);
    d.set(1, 1, 1);
    return d;
}

/// Reads an NFA over the pair alphabet of `base` as a transducer. Several
/// initial states are merged into a fresh one.
inline wad::TransducerNfa transducer_from_nfa(const wad::ExplicitNfa& n, const wad::Alphabet& base) {
    const std::size_t m = base.size();
    wad::TransducerNfa t(base);
    for (std::size_t s = 1; s < n.size(); ++s) {
        t.add_state();
    }
    for (wad::State s = 0; s < n.size(); ++s) {
        t.set_accepting(s, n.accepting[s] != 0);
    }
    auto copy_moves = [&](wad::State from, wad::State as) {
        for (wad::Letter l = 0; l < n.letters; ++l) {
            for (wad::State to : n.next(from, l)) {
                t.add_transition(as, static_cast<wad::Letter>(l / m), static_cast<wad::Letter>(l % m), to);
            }
        }
    };
    for (wad::State s = 0; s < n.size(); ++s) {
        copy_moves(s, s);
    }
    if (n.initial.size() == 1) {
        t.set_initial(n.initial.front());
    } else {
        bool accept = false;
        for (wad::State s : n.initial) {
            accept = accept || n.accepting[s] != 0;
        }
        const wad::StateId fresh = t.add_state(accept);
        for (wad::State s : n.initial) {
            copy_moves(s, fresh);
        }
        t.set_initial(fresh);
    }
    return t;
}

/// Random weakly acyclic transducer over `base`.
inline wad::TransducerNfa random_transducer(const wad::Alphabet& base, std::size_t states, std::uint64_t seed) {
    return transducer_from_nfa(wad::random_wa_nfa(base.size() * base.size(), states, seed), base);
}

/// Random Petri net with a coverability query: up to `places` places and
/// `transitions` transitions, arc weights <= weight, initial tokens <= init
/// and target tokens <= target per place.
inline wad::ModelFile random_net(std::mt19937_64& rng, std::uint32_t places, std::uint32_t transitions,
                                 std::uint32_t weight, std::uint32_t init, std::uint32_t target) {
    auto draw = [&](std::uint32_t n) { return static_cast<std::uint32_t>(rng() % (n + 1)); };
    wad::PetriNet net;
    const std::uint32_t np = 1 + draw(places - 1);
    for (std::uint32_t p = 0; p < np; ++p) {
        net.places.push_back("p" + std::to_string(p));
    }
    const std::uint32_t nt = 1 + draw(transitions - 1);
    for (std::uint32_t i = 0; i < nt; ++i) {
        wad::PetriTransition t{"t" + std::to_string(i), {}, {}};
        for (std::uint32_t p = 0; p < np; ++p) {
            t.consume.push_back(draw(weight));
            t.produce.push_back(draw(weight));
        }
        net.transitions.push_back(std::move(t));
    }
    wad::Marking m0, m1;
    for (std::uint32_t p = 0; p < np; ++p) {
        m0.push_back(draw(init));
        m1.push_back(draw(target));
    }
    wad::ModelFile m{net, {m0, {}}};
    m.query.targets.push_back({std::nullopt, m1});
    return m;
}

}  // namespace wadtest
