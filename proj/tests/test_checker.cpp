#include <catch2/catch.hpp>

#include "helpers.hpp"
#include "wad/checker.hpp"
#include "wad/encoders.hpp"
#include "wad/model_file.hpp"
#include "wad/ops.hpp"
#include "wad/relation.hpp"

using namespace wad;
using namespace wadtest;

namespace {

std::string model_path(const std::string& name) { return std::string(WAD_MODELS_DIR) + "/" + name; }

CheckReport run(Instance& inst, Schedule schedule = Schedule::Breadth, Engine engine = Engine::General) {
    CheckOptions o;
    o.schedule = schedule;
    o.engine = engine;
    o.pad_closure = inst.pad_closure;
    o.max_iterations = 200;
    return backward_reach(inst.table, inst.transducers, inst.target, inst.initial, o);
}

NodeId close(Instance& inst, NodeId q) {
    return inst.pad_closure ? letter_closure(inst.table, q, *inst.pad_closure).node : q;
}

/// The final set of a SAFE run is closed under every Pre and misses the
/// initial set.
void require_fixpoint(Instance& inst, const CheckReport& r) {
    REQUIRE(intersect(inst.table, r.final_node, inst.initial) == kEmpty);
    REQUIRE(difference(inst.table, inst.target, r.final_node) == kEmpty);
    for (const auto& t : inst.transducers) {
        const NodeId pre = close(inst, pre_general(inst.table, t, r.final_node).node);
        REQUIRE(difference(inst.table, pre, r.final_node) == kEmpty);
    }
}

}  // namespace

TEST_CASE("Petri example is unsafe", "[checker]") {
    Instance inst = build_instance(load_model(model_path("two_place.pn")));
    const CheckReport r = run(inst);
    CHECK(r.verdict == Verdict::Unsafe);
    CHECK(r.iterations <= 3);
    CHECK_FALSE(r.contraction_occurred);
}

TEST_CASE("Petri example from (1,1) is safe", "[checker]") {
    Instance inst = build_instance(load_model(model_path("two_place_safe.pn")));
    const CheckReport r = run(inst);
    REQUIRE(r.verdict == Verdict::Safe);
    CHECK_FALSE(r.contraction_occurred);
    require_fixpoint(inst, r);
}

TEST_CASE("broadcast example is unsafe", "[checker]") {
    Instance inst = build_instance(load_model(model_path("three_state.bp")));
    CHECK(run(inst).verdict == Verdict::Unsafe);
}

TEST_CASE("LCS example is unsafe", "[checker]") {
    Instance inst = build_instance(load_model(model_path("three_state.lcs")));
    const CheckReport r = run(inst);
    CHECK(r.verdict == Verdict::Unsafe);
    CHECK_FALSE(r.contraction_occurred);
}

TEST_CASE("ring protocols are safe", "[checker]") {
    for (int n = 2; n <= 4; ++n) {
        Instance inst = build_instance(load_model(model_path("ring" + std::to_string(n) + ".lcs")));
        for (Schedule s : {Schedule::Breadth, Schedule::Sweep}) {
            const CheckReport r = run(inst, s);
            REQUIRE(r.verdict == Verdict::Safe);
            REQUIRE_FALSE(r.contraction_occurred);
            require_fixpoint(inst, r);
        }
    }
}

TEST_CASE("iterates grow monotonically", "[checker]") {
    Instance inst = build_instance(load_model(model_path("ring3.lcs")));
    NodeId x = inst.target;
    for (int i = 0; i < 10; ++i) {
        NodeId next = x;
        for (const auto& t : inst.transducers) {
            next = unite(inst.table, next, close(inst, pre_general(inst.table, t, x).node));
        }
        REQUIRE(difference(inst.table, x, next) == kEmpty);
        x = next;
    }
}

TEST_CASE("iteration limit", "[checker]") {
    Instance inst = build_instance(load_model(model_path("ring4.lcs")));
    CheckOptions o;
    o.max_iterations = 1;
    o.pad_closure = inst.pad_closure;
    const CheckReport r = backward_reach(inst.table, inst.transducers, inst.target, inst.initial, o);
    CHECK(r.verdict == Verdict::Limit);
    CHECK_FALSE(r.limit_reason.empty());
}

TEST_CASE("target meeting the initial set", "[checker]") {
    DiagramTable t(ab());
    const TransducerNfa id = identity_transducer(t.alphabet());
    const std::vector<TransducerNfa> ts{id};
    const CheckReport r = backward_reach(t, ts, kUniversal, t.alphabet().parse_word("a b"));
    CHECK(r.verdict == Verdict::Unsafe);
    CHECK(r.iterations == 0);
    const CheckReport s = backward_reach(t, ts, kEmpty, t.alphabet().parse_word("a b"));
    CHECK(s.verdict == Verdict::Safe);
}

TEST_CASE("csv rows", "[checker]") {
    Instance inst = build_instance(load_model(model_path("two_place.pn")));
    const CheckReport r = run(inst);
    const std::string header = csv_header();
    const std::string row = csv_row("two_place", r, inst.table.reachable_count(r.final_node));
    CHECK(std::count(header.begin(), header.end(), ',') == std::count(row.begin(), row.end(), ','));
    CHECK(row.rfind("two_place,", 0) == 0);
}

TEST_CASE("random nets agree with coverability", "[checker][property]") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        const ModelFile m = random_net(rng, 4, 4, 2, 3, 2);
        const auto& net = std::get<PetriNet>(m.model);
        const bool expect = pn_cover_oracle(net, std::get<Marking>(m.query.init),
                                            {std::get<Marking>(m.query.targets[0].basis)});
        Instance inst = build_instance(m);
        const CheckReport r = run(inst);
        INFO(print_model(m));
        REQUIRE_FALSE(r.contraction_occurred);
        REQUIRE(r.verdict == (expect ? Verdict::Unsafe : Verdict::Safe));
        if (r.verdict == Verdict::Safe) {
            require_fixpoint(inst, r);
        }
        REQUIRE(run(inst, Schedule::Sweep).verdict == r.verdict);
        REQUIRE(run(inst, Schedule::Breadth, Engine::Compatible).verdict == r.verdict);
    }
}
