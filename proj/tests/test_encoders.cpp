#include <catch2/catch.hpp>

#include <algorithm>

#include "helpers.hpp"
#include "wad/encoders.hpp"
#include "wad/model_file.hpp"
#include "wad/oracle.hpp"
#include "wad/ops.hpp"
#include "wad/relation.hpp"

using namespace wad;
using namespace wadtest;

namespace {

const char* kPetri =
    "petri\n"
    "places p q\n"
    "transition t\n"
    "  consume p 2\n"
    "  consume q 1\n"
    "  produce p 1\n"
    "  produce q 3\n"
    "init p 3 q 1\n"
    "target p 1 q 5\n";

const char* kBroadcast =
    "broadcast\n"
    "states p q r\n"
    "rendezvous b send p -> q recv p -> r\n"
    "broadcast c send r -> q recv q -> p\n"
    "init p p p p\n"
    "target expr [p r]* q [p q r]*\n";

const char* kLcs =
    "lcs\n"
    "states p q r\n"
    "messages a b\n"
    "channels 2\n"
    "rule p -> q recv 1 a\n"
    "rule q -> p send 2 b\n"
    "rule p -> r nop\n"
    "init p | a | -\n"
    "target q | - | -\n";

std::string rendered(const SystemModel& m, const Config& c, std::size_t pads = 0) {
    return encoding_alphabet(m).render(encode_padded_word(m, c, pads));
}

bool dfa_empty(const ExplicitDfa& d) {
    ExplicitDfa none(d.letters);
    none.add_state(false);
    for (Letter a = 0; a < d.letters; ++a) {
        none.set(0, a, 0);
    }
    return equivalent(d, none);
}

/// Whether some padded encoding of `from` steps to one of `to` under t,
/// decided on explicit automata.
bool steps(DiagramTable& table, const TransducerNfa& t, const SystemModel& m, const Config& from, const Config& to) {
    const ExplicitDfa pre = pre_oracle(t, dfa_from_wad(table, encode_padded(table, m, to)));
    return !dfa_empty(product_dfa(pre, dfa_from_wad(table, encode_padded(table, m, from)), true));
}

/// Whether some padded encoding of `from` steps into the upward closure of
/// `to`, decided by pre_general. A contracted result must still be exact.
bool steps_up(DiagramTable& table, const TransducerNfa& t, const SystemModel& m, const Config& from, const Config& to) {
    const NodeId up = encode_upward(table, m, to);
    const PreResult pre = pre_general(table, t, up);
    if (pre.contracted) {
        REQUIRE(same_language(table, pre.node, pre_oracle(t, dfa_from_wad(table, up))));
    }
    return intersect(table, pre.node, encode_padded(table, m, from)) != kEmpty;
}

bool lcs_leq(const LcsConfig& a, const LcsConfig& b) {
    if (a.processes != b.processes) {
        return false;
    }
    for (std::size_t c = 0; c < a.channels.size(); ++c) {
        std::size_t i = 0;
        for (std::uint32_t l : b.channels[c]) {
            if (i < a.channels[c].size() && a.channels[c][i] == l) {
                ++i;
            }
        }
        if (i != a.channels[c].size()) {
            return false;
        }
    }
    return true;
}

std::vector<Marking> markings(std::size_t places, std::uint32_t max) {
    std::vector<Marking> out{{}};
    for (std::size_t p = 0; p < places; ++p) {
        std::vector<Marking> next;
        for (const auto& m : out) {
            for (std::uint32_t n = 0; n <= max; ++n) {
                Marking e = m;
                e.push_back(n);
                next.push_back(std::move(e));
            }
        }
        out = std::move(next);
    }
    return out;
}

std::vector<std::vector<std::uint32_t>> words_over(std::uint32_t letters, std::size_t maxlen) {
    std::vector<std::vector<std::uint32_t>> out;
    for (const auto& w : all_words(letters, maxlen)) {
        out.emplace_back(w.begin(), w.end());
    }
    return out;
}

}  // namespace

TEST_CASE("encoding words", "[encoders]") {
    const ModelFile pn = parse_model(kPetri);
    CHECK(rendered(pn.model, Marking{3, 1}) == "• • • # • #");
    CHECK(rendered(pn.model, Marking{1, 0}, 2) == "• ◦ ◦ # ◦ ◦ #");
    const ModelFile bp = parse_model(kBroadcast);
    CHECK(rendered(bp.model, BpConfig{0, 2, 0, 1}) == "p r p q");
    const ModelFile lcs = parse_model(kLcs);
    LcsConfig c;
    c.processes = {0, 1};
    c.channels = {{0, 1}, {}};
    const LcsModel three = std::get<LcsModel>(lcs.model);
    LcsModel wide = three;
    wide.channels = 3;
    c.channels.push_back({1});
    CHECK(rendered(wide, c) == "p q # a b # # b #");
    CHECK(rendered(wide, c, 1) == "p q # a b X # X # b X #");
}

TEST_CASE("upward closures of Petri markings", "[encoders]") {
    const ModelFile pn = parse_model(kPetri);
    DiagramTable t(encoding_alphabet(pn.model));
    const NodeId up = encode_upward(t, pn.model, Marking{1, 2});
    for (const auto& m : markings(2, 4)) {
        const bool above = m[0] >= 1 && m[1] >= 2;
        for (std::size_t pads = 0; pads < 3; ++pads) {
            REQUIRE(t.member(up, encode_padded_word(pn.model, m, pads)) == above);
        }
    }
}

TEST_CASE("upward closures of LCS configurations", "[encoders]") {
    const ModelFile lcs = parse_model(kLcs);
    const LcsModel& model = std::get<LcsModel>(lcs.model);
    DiagramTable t(encoding_alphabet(lcs.model));
    LcsConfig base;
    base.processes = {1};
    base.channels = {{0}, {1}};
    const NodeId up = encode_upward(t, lcs.model, base);
    const Alphabet& s = t.alphabet();
    CHECK(t.member(up, s.parse_word("q # a # b #")));
    CHECK(t.member(up, s.parse_word("q # b a X # X a b #")));
    CHECK_FALSE(t.member(up, s.parse_word("p # a # b #")));
    CHECK_FALSE(t.member(up, s.parse_word("q # b # a #")));
    CHECK_FALSE(t.member(up, s.parse_word("q q # a # b #")));
    LcsConfig alt = base;
    alt.alternatives = {{1, 2}};
    const NodeId either = encode_upward(t, lcs.model, alt);
    CHECK(t.member(either, s.parse_word("r # a # b #")));
    CHECK(t.member(either, s.parse_word("q # a # b #")));
    CHECK_FALSE(t.member(either, s.parse_word("p # a # b #")));
    (void)model;
}

TEST_CASE("broadcast targets denote one word", "[encoders]") {
    const ModelFile bp = parse_model(kBroadcast);
    DiagramTable t(encoding_alphabet(bp.model));
    const NodeId q = encode_upward(t, bp.model, BpConfig{0, 1});
    CHECK(t.enumerate(q, 4) == std::vector<Word>{Word{0, 1}});
    CHECK(encode_padded(t, bp.model, BpConfig{0, 1}) == q);
    CHECK_FALSE(closure_pad(bp.model));
}

TEST_CASE("Petri transition pairs", "[encoders]") {
    const ModelFile pn = parse_model(kPetri);
    const auto ts = transition_transducers(pn.model);
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].name == "t");
    const Alphabet s = encoding_alphabet(pn.model);
    CHECK(ts[0].transducer.accepts(s.parse_word("• • • # • ◦ ◦ #"), s.parse_word("• • ◦ # • • • #")));
    CHECK(ts[0].transducer.accepts(s.parse_word("• • ◦ # • ◦ ◦ #"), s.parse_word("• ◦ ◦ # • • • #")));
    CHECK_FALSE(ts[0].transducer.accepts(s.parse_word("• ◦ ◦ # • ◦ ◦ #"), s.parse_word("◦ ◦ ◦ # • • • #")));
    CHECK_FALSE(ts[0].transducer.accepts(s.parse_word("• • • # • ◦ #"), s.parse_word("• • ◦ # • • #")));
}

TEST_CASE("broadcast transition pairs", "[encoders]") {
    const ModelFile bp = parse_model(kBroadcast);
    const auto ts = transition_transducers(bp.model);
    REQUIRE(ts.size() == 2);
    const Alphabet s = encoding_alphabet(bp.model);
    const auto& b = ts[0].transducer;
    const auto& c = ts[1].transducer;
    CHECK(b.accepts(s.parse_word("p p p"), s.parse_word("q p r")));
    CHECK(b.accepts(s.parse_word("p p p"), s.parse_word("p r q")));
    CHECK_FALSE(b.accepts(s.parse_word("p p p"), s.parse_word("q q p")));
    CHECK_FALSE(b.accepts(s.parse_word("p q r"), s.parse_word("p q r")));
    CHECK(c.accepts(s.parse_word("r q q p"), s.parse_word("q p p p")));
    CHECK(c.accepts(s.parse_word("r p"), s.parse_word("q p")));
    CHECK_FALSE(c.accepts(s.parse_word("r q"), s.parse_word("q q")));
}

TEST_CASE("LCS transition pairs", "[encoders]") {
    const ModelFile lcs = parse_model(kLcs);
    const auto ts = transition_transducers(lcs.model);
    REQUIRE(ts.size() == 3);
    const Alphabet s = encoding_alphabet(lcs.model);
    const auto& recv = ts[0].transducer;
    const auto& send = ts[1].transducer;
    const auto& nop = ts[2].transducer;
    CHECK(recv.accepts(s.parse_word("p # a # #"), s.parse_word("q # X # #")));
    CHECK(recv.accepts(s.parse_word("p # b a b # #"), s.parse_word("q # X X b # #")));
    CHECK_FALSE(recv.accepts(s.parse_word("p # b # #"), s.parse_word("q # X # #")));
    CHECK(send.accepts(s.parse_word("q # # X #"), s.parse_word("p # # b #")));
    CHECK(send.accepts(s.parse_word("q # # a X #"), s.parse_word("p # # a b #")));
    CHECK(send.accepts(s.parse_word("q # # X a #"), s.parse_word("p # # b X #")));
    CHECK_FALSE(send.accepts(s.parse_word("q # # a #"), s.parse_word("p # # a #")));
    CHECK(nop.accepts(s.parse_word("p # a # #"), s.parse_word("r # a # #")));
    CHECK(nop.accepts(s.parse_word("q p # # #"), s.parse_word("q r # # #")));
    CHECK_FALSE(nop.accepts(s.parse_word("q # # #"), s.parse_word("r # # #")));
}

TEST_CASE("Petri pre of an upward closure", "[encoders]") {
    const ModelFile pn = parse_model(kPetri);
    DiagramTable t(encoding_alphabet(pn.model));
    const auto ts = transition_transducers(pn.model);
    const NodeId pre = pre_general(t, ts[0].transducer, encode_upward(t, pn.model, Marking{1, 5})).node;
    CHECK(t.member(pre, encode_padded_word(pn.model, Marking{2, 3}, 3)));
    CHECK(t.member(pre, encode_padded_word(pn.model, Marking{3, 4}, 3)));
    CHECK_FALSE(t.member(pre, encode_padded_word(pn.model, Marking{2, 2}, 3)));
    CHECK_FALSE(t.member(pre, encode_padded_word(pn.model, Marking{1, 3}, 3)));
}

TEST_CASE("Petri encoding is sound", "[encoders][property]") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        PetriNet net;
        net.places = {"p", "q"};
        std::uint64_t x = seed * 2654435761ULL + 1;
        auto draw = [&](std::uint32_t n) {
            x = x * 6364136223846793005ULL + 1442695040888963407ULL;
            return static_cast<std::uint32_t>((x >> 33) % n);
        };
        net.transitions.push_back({"t", {draw(3), draw(3)}, {draw(3), draw(3)}});
        const SystemModel model = net;
        DiagramTable t(encoding_alphabet(model));
        const auto ts = transition_transducers(model);
        for (const auto& from : markings(2, 3)) {
            const auto fired = pn_fire(net, net.transitions[0], from);
            for (const auto& to : markings(2, 4)) {
                REQUIRE(steps(t, ts[0].transducer, model, from, to) == (fired && *fired == to));
                const bool above = fired && (*fired)[0] >= to[0] && (*fired)[1] >= to[1];
                REQUIRE(steps_up(t, ts[0].transducer, model, from, to) == above);
            }
        }
    }
}

TEST_CASE("broadcast encoding is sound", "[encoders][property]") {
    const ModelFile bp = parse_model(kBroadcast);
    const auto& proto = std::get<BroadcastProtocol>(bp.model);
    DiagramTable t(encoding_alphabet(bp.model));
    const auto ts = transition_transducers(bp.model);
    std::vector<BpConfig> configs;
    for (const auto& w : words_over(3, 3)) {
        configs.emplace_back(w.begin(), w.end());
    }
    for (std::size_t i = 0; i < ts.size(); ++i) {
        for (const auto& from : configs) {
            const auto succ = bp_successors(proto, proto.actions[i], from);
            for (const auto& to : configs) {
                const bool expect = std::find(succ.begin(), succ.end(), to) != succ.end();
                REQUIRE(steps(t, ts[i].transducer, bp.model, from, to) == expect);
            }
        }
    }
}

TEST_CASE("LCS encoding is sound", "[encoders][property]") {
    const ModelFile lcs = parse_model(kLcs);
    const auto& model = std::get<LcsModel>(lcs.model);
    DiagramTable t(encoding_alphabet(lcs.model));
    const auto ts = transition_transducers(lcs.model);
    std::vector<LcsConfig> configs;
    const auto chans = words_over(2, 2);
    for (std::uint32_t p = 0; p < 3; ++p) {
        for (const auto& c1 : chans) {
            for (const auto& c2 : chans) {
                configs.push_back({{p}, {c1, c2}, {}});
            }
        }
    }
    for (std::size_t i = 0; i < ts.size(); ++i) {
        for (const auto& from : configs) {
            const auto succ = lcs_successors(model, model.rules[i], from);
            for (const auto& to : configs) {
                const bool expect = std::find(succ.begin(), succ.end(), to) != succ.end();
                INFO(ts[i].name << ": " << rendered(lcs.model, from) << " to " << rendered(lcs.model, to));
                REQUIRE(steps(t, ts[i].transducer, lcs.model, from, to) == expect);
                const bool above = std::any_of(succ.begin(), succ.end(), [&](const LcsConfig& c) { return lcs_leq(to, c); });
                REQUIRE(steps_up(t, ts[i].transducer, lcs.model, from, to) == above);
            }
        }
    }
}

TEST_CASE("upward closures are monotone", "[encoders][property]") {
    const ModelFile pn = parse_model(kPetri);
    DiagramTable t(encoding_alphabet(pn.model));
    const auto all = markings(2, 3);
    for (const auto& a : all) {
        for (const auto& b : all) {
            const bool le = a[0] <= b[0] && a[1] <= b[1];
            const NodeId ua = encode_upward(t, pn.model, a);
            const NodeId ub = encode_upward(t, pn.model, b);
            REQUIRE((difference(t, ub, ua) == kEmpty) == le);
        }
    }
    const ModelFile lcs = parse_model(kLcs);
    DiagramTable u(encoding_alphabet(lcs.model));
    const auto chans = words_over(2, 2);
    for (const auto& a : chans) {
        for (const auto& b : chans) {
            const NodeId ua = encode_upward(u, lcs.model, LcsConfig{{0}, {a, {}}, {}});
            const NodeId ub = encode_upward(u, lcs.model, LcsConfig{{0}, {b, {}}, {}});
            std::size_t i = 0;
            for (std::uint32_t l : b) {
                if (i < a.size() && a[i] == l) {
                    ++i;
                }
            }
            REQUIRE((difference(u, ub, ua) == kEmpty) == (i == a.size()));
        }
    }
}

TEST_CASE("LCS upward closures ignore pads", "[encoders][property]") {
    const ModelFile lcs = parse_model(kLcs);
    DiagramTable t(encoding_alphabet(lcs.model));
    const Letter x = *closure_pad(lcs.model);
    const auto chans = words_over(2, 2);
    for (const auto& a : chans) {
        for (const auto& b : chans) {
            const NodeId up = encode_upward(t, lcs.model, LcsConfig{{1}, {a, b}, {}});
            const ClosureResult c = letter_closure(t, up, x);
            REQUIRE_FALSE(c.contracted);
            REQUIRE(letter_closure(t, c.node, x).node == c.node);
            for (const Word& w : t.enumerate(c.node, 7)) {
                const auto first = std::find(w.begin(), w.end(), t.alphabet().index(kLcsDelim));
                Word tail(first, w.end());
                tail.erase(std::remove(tail.begin(), tail.end(), x), tail.end());
                Word head(w.begin(), first);
                head.erase(std::remove(head.begin(), head.end(), x), head.end());
                head.insert(head.end(), tail.begin(), tail.end());
                REQUIRE(t.member(up, head));
            }
        }
    }
}
