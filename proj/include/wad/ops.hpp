#pragma once

#include "wad/table.hpp"

namespace wad {

// Boolean operations on nodes of one table. All results are memoized in the
// table, and recursion runs on an explicit stack, so chains as long as the
// table itself are fine.

NodeId complement(DiagramTable& table, NodeId q);
NodeId intersect(DiagramTable& table, NodeId p, NodeId q);
NodeId unite(DiagramTable& table, NodeId p, NodeId q);
/// L(p) \ L(q), computed as intersect(p, complement(q)).
NodeId difference(DiagramTable& table, NodeId p, NodeId q);
struct ClosureResult {
    NodeId node;
    /// A cycle of distinct intermediate unions was folded into a self-loop;
    /// the node is exact whenever the true closure is weakly acyclic.
    bool contracted = false;
};

/// Words that become a word of L(q) after inserting and deleting x anywhere.
/// The result ignores x entirely.
ClosureResult letter_closure(DiagramTable& table, NodeId q, Letter x);

}  // namespace wad
