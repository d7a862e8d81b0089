#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wad/alphabet.hpp"

namespace wad {

/// Identifier of a node in a DiagramTable. Ids are dense and assigned in
/// increasing order; 0 and 1 are reserved for the empty and the universal
/// language. The largest value is reserved for the SELF successor marker.
struct NodeId {
    std::uint32_t value = 0;

    constexpr auto operator<=>(const NodeId&) const = default;
    constexpr bool is_self() const noexcept {
        return value == std::numeric_limits<std::uint32_t>::max();
    }
};

inline constexpr NodeId kEmpty{0};
inline constexpr NodeId kUniversal{1};
inline constexpr NodeId kSelf{std::numeric_limits<std::uint32_t>::max()};

using SuccessorTuple = std::vector<NodeId>;

/// Per-table instrumentation; each counter is monotone.
struct OpCounters {
    std::uint64_t make_calls = 0;
    std::uint64_t complement_expansions = 0;
    std::uint64_t intersect_expansions = 0;
    std::uint64_t union_expansions = 0;
    std::uint64_t pre_compatible_expansions = 0;
    std::uint64_t pre_general_expansions = 0;
    /// Bumped by every emptiness/universality/equality decision.
    std::uint64_t decisions = 0;
};

struct RelationMemo;

/// Append-only, hash-consed table of nodes: a finite fragment of the master
/// automaton over a fixed alphabet. Distinct ids always denote distinct
/// languages, provided nodes are only created through make().
///
/// A table and its memo caches form a single-threaded session object.
class DiagramTable {
public:
    explicit DiagramTable(Alphabet alphabet);

    DiagramTable(const DiagramTable&) = delete;
    DiagramTable& operator=(const DiagramTable&) = delete;
    DiagramTable(DiagramTable&&) noexcept = default;
    DiagramTable& operator=(DiagramTable&&) noexcept = default;

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t letters() const noexcept { return width_; }
    std::size_t size() const noexcept { return flags_.size(); }
    std::uint64_t uid() const noexcept { return uid_; }

    /// Returns the unique id for L(succ, flag), creating at most one node.
    /// Throws InputError on a wrong tuple width or a dangling successor and
    /// TableLimitExceeded when a new node would exceed the node limit.
    NodeId make(std::span<const NodeId> succ, bool flag);

    bool contains(NodeId q) const noexcept { return !q.is_self() && q.value < size(); }
    bool flag(NodeId q) const { return flags_[checked(q)] != 0; }
    /// Successor entry as stored; may be kSelf.
    NodeId raw_successor(NodeId q, Letter a) const { return succ_[checked(q) * width_ + a]; }
    /// Successor with SELF resolved to q itself.
    NodeId successor(NodeId q, Letter a) const {
        NodeId r = raw_successor(q, a);
        return r.is_self() ? q : r;
    }
    std::span<const NodeId> successors(NodeId q) const {
        return {succ_.data() + checked(q) * width_, width_};
    }

    bool member(NodeId q, const Word& w) const;
    /// Membership of a whitespace-separated token word.
    bool member(NodeId q, std::string_view tokens) const;
    /// All words of L(q) with length <= maxlen, in shortlex order.
    std::vector<Word> enumerate(NodeId q, std::size_t maxlen) const;
    /// Ids reachable from q through non-SELF successors, q included, ascending.
    std::vector<NodeId> reachable(NodeId q) const;
    std::size_t reachable_count(NodeId q) const { return reachable(q).size(); }

    /// Constant-time decisions, made possible by canonicity.
    bool is_empty(NodeId q) const {
        ++counters_.decisions;
        return q == kEmpty;
    }
    bool is_universal(NodeId q) const {
        ++counters_.decisions;
        return q == kUniversal;
    }
    bool equivalent(NodeId p, NodeId q) const {
        ++counters_.decisions;
        return p == q;
    }

    /// Checks structural acyclicity, the reserved nodes and the lookup index.
    /// Throws Error describing the first violation.
    void check_invariants() const;

    /// 0 disables the cap.
    void set_node_limit(std::size_t limit) noexcept { node_limit_ = limit; }
    std::size_t node_limit() const noexcept { return node_limit_; }

    OpCounters& counters() noexcept { return counters_; }
    const OpCounters& counters() const noexcept { return counters_; }

    // Memo caches. Results never go stale because the table is append-only.
    std::vector<NodeId>& complement_memo() { return complement_memo_; }
    std::unordered_map<std::uint64_t, NodeId>& intersect_memo() { return intersect_memo_; }
    std::unordered_map<std::uint64_t, NodeId>& union_memo() { return union_memo_; }
    std::shared_ptr<RelationMemo>& relation_memo() { return relation_memo_; }
    /// Keyed by pair_key(letter, node).
    std::unordered_map<std::uint64_t, NodeId>& closure_memo() { return closure_memo_; }

private:
    std::size_t checked(NodeId q) const;
    std::uint64_t hash_of(const NodeId* succ, bool flag) const;
    std::uint32_t find_slot(const NodeId* succ, bool flag, std::uint64_t h) const;
    void index_insert(std::uint32_t id);
    void rehash(std::size_t capacity);

    Alphabet alphabet_;
    std::size_t width_;
    std::uint64_t uid_;
    std::vector<NodeId> succ_;
    std::vector<std::uint8_t> flags_;
    std::vector<std::uint32_t> slots_;
    std::size_t node_limit_ = 0;
    mutable OpCounters counters_;

    std::vector<NodeId> complement_memo_;
    std::unordered_map<std::uint64_t, NodeId> intersect_memo_;
    std::unordered_map<std::uint64_t, NodeId> union_memo_;
    std::shared_ptr<RelationMemo> relation_memo_;
    std::unordered_map<std::uint64_t, NodeId> closure_memo_;
};

inline std::uint64_t pair_key(NodeId p, NodeId q) {
    return (static_cast<std::uint64_t>(p.value) << 32) | q.value;
}

}  // namespace wad
