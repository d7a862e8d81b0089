#pragma once

#include <span>
#include <string>

#include "wad/table.hpp"

namespace wad {

/// Graphviz rendering of the nodes reachable from `roots`, ordered by id.
/// Accepting nodes are double circles, SELF entries are self-loops and
/// letters sharing a target are merged into one edge.
std::string to_dot(const DiagramTable& table, std::span<const NodeId> roots);

/// Display name of a node: q∅, q_all or q<id>.
std::string node_name(NodeId q);

}  // namespace wad
