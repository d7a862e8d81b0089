#include <catch2/catch.hpp>

#include "helpers.hpp"
#include "wad/dot.hpp"

using namespace wad;
using namespace wadtest;

namespace {

std::size_t count(const std::string& s, const std::string& what) {
    std::size_t n = 0;
    for (auto i = s.find(what); i != std::string::npos; i = s.find(what, i + 1)) {
        ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("node names", "[dot]") {
    CHECK(node_name(kEmpty) == "q∅");
    CHECK(node_name(kUniversal) == "q_all");
    CHECK(node_name(NodeId{7}) == "q7");
}

TEST_CASE("universal diagram", "[dot]") {
    DiagramTable t(ab());
    const NodeId roots[] = {kUniversal};
    const std::string dot = to_dot(t, roots);
    CHECK(count(dot, "shape=") == 1);
    CHECK(count(dot, "->") == 1);
    CHECK(dot.find("\"q_all\" -> \"q_all\" [label=\"Σ\"]") != std::string::npos);
}

TEST_CASE("two node diagram", "[dot]") {
    DiagramTable t(ab());
    const NodeId q = compile(t, "[a]*");
    const NodeId roots[] = {q};
    const std::string dot = to_dot(t, roots);
    CHECK(count(dot, "shape=") == 2);
    CHECK(count(dot, "doublecircle") == 1);
    CHECK(dot.find("-> \"q∅\" [label=\"b\"]") != std::string::npos);
}

TEST_CASE("K and L diagram", "[dot]") {
    DiagramTable t(abc());
    const NodeId k = compile(t, kK);
    const NodeId l = compile(t, kL);
    const NodeId roots[] = {k, l};
    const std::string dot = to_dot(t, roots);
    CHECK(count(dot, "shape=") == 5);
    DiagramTable u(abc());
    const NodeId k2 = compile(u, kK);
    const NodeId l2 = compile(u, kL);
    const NodeId roots2[] = {k2, l2};
    CHECK(to_dot(u, roots2) == dot);
}
