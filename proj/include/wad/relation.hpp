#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "wad/table.hpp"
#include "wad/transducer.hpp"

namespace wad {

/// Result of the subset-construction Pre/Post. When `contracted` is set a
/// genuine cycle of subsets was folded into a self-loop, and the node is
/// only guaranteed correct if the true result is weakly acyclic.
struct PreResult {
    NodeId node;
    bool contracted = false;
};

/// One step S –letter→ S' recorded by pre_general, given by the nodes built
/// for S and S'. Contracted steps are not recorded.
struct PreTraceEdge {
    NodeId from;
    Letter letter;
    NodeId to;
};

struct PreStats {
    std::uint64_t expansions = 0;   ///< subsets expanded (memo misses)
    std::uint64_t contractions = 0; ///< cycle contractions fired
    std::uint64_t memo_hits = 0;
    std::size_t max_depth = 0;
    std::size_t max_subset = 0;     ///< largest subset, in (state, node) pairs
};

struct PreOptions {
    std::optional<std::chrono::steady_clock::time_point> deadline;
    PreStats* stats = nullptr;
    std::vector<PreTraceEdge>* trace = nullptr;
    /// Reuse subsets computed by earlier calls with the same transducer.
    bool memoize = true;
};

/// Pre_{L(t)}(L(q)) by an on-the-fly subset construction over pairs
/// (transducer state, node), contracting cycles of subsets found on the
/// current depth-first path. Throws AlphabetMismatch when t is not over the
/// table's alphabet and DeadlineExceeded when the deadline passes.
PreResult pre_general(DiagramTable& table, const TransducerNfa& t, NodeId q, const PreOptions& options = {});

/// Post_{L(t)}(L(q)), computed as pre_general over the transposed relation.
PreResult post_general(DiagramTable& table, const TransducerNfa& t, NodeId q, const PreOptions& options = {});

/// Outcome of the pre-compatibility test. On failure, `input` is a letter
/// with two distinct viable output letters `first` and `second`, reached at
/// the pair (relation_node, node).
struct CompatibilityResult {
    bool compatible = true;
    Letter input = 0;
    Letter first = 0;
    Letter second = 0;
    NodeId relation_node = kEmpty;
    NodeId node = kEmpty;

    explicit operator bool() const noexcept { return compatible; }
};

/// Whether L(p) over Σ×Σ (a node of `relation`) and L(q) over Σ (a node of
/// `base`) are pre-compatible: for every input letter at most one output
/// letter b keeps both residuals non-empty, recursively.
CompatibilityResult check_pre_compatibility(DiagramTable& relation, NodeId p, DiagramTable& base, NodeId q);

/// Pre_{L(p)}(L(q)) in polynomial time, valid when the pair is
/// pre-compatible. Throws Error if two viable output letters show up.
NodeId pre_compatible(DiagramTable& relation, NodeId p, DiagramTable& base, NodeId q);

/// Verifies that `relation` uses the product alphabet of `base`.
void require_product_alphabet(const DiagramTable& relation, const DiagramTable& base);

}  // namespace wad
