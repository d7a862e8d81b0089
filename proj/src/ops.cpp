#include "wad/ops.hpp"

#include <algorithm>
#include <optional>
#include <vector>

#include "wad/error.hpp"

namespace wad {

namespace {

struct BinaryFrame {
    NodeId p;
    NodeId q;
    Letter next = 0;
    std::size_t buffer = 0;
};

struct IntersectPolicy {
    static std::optional<NodeId> base(NodeId p, NodeId q) {
        if (p == kEmpty || q == kEmpty) {
            return kEmpty;
        }
        if (p == kUniversal) {
            return q;
        }
        if (q == kUniversal || p == q) {
            return p;
        }
        return std::nullopt;
    }
    static bool combine(bool a, bool b) { return a && b; }
    static std::unordered_map<std::uint64_t, NodeId>& memo(DiagramTable& t) { return t.intersect_memo(); }
    static std::uint64_t& counter(DiagramTable& t) { return t.counters().intersect_expansions; }
};

struct UnionPolicy {
    static std::optional<NodeId> base(NodeId p, NodeId q) {
        if (p == kUniversal || q == kUniversal) {
            return kUniversal;
        }
        if (p == kEmpty) {
            return q;
        }
        if (q == kEmpty || p == q) {
            return p;
        }
        return std::nullopt;
    }
    static bool combine(bool a, bool b) { return a || b; }
    static std::unordered_map<std::uint64_t, NodeId>& memo(DiagramTable& t) { return t.union_memo(); }
    static std::uint64_t& counter(DiagramTable& t) { return t.counters().union_expansions; }
};

std::uint64_t commutative_key(NodeId p, NodeId q) {
    return p <= q ? pair_key(p, q) : pair_key(q, p);
}

// Product recursion shared by intersection and union. A letter keeps the
// result in place (SELF) exactly when both operands stay put.
template <class Policy>
NodeId apply_binary(DiagramTable& table, NodeId p0, NodeId q0) {
    (void)table.flag(p0);
    (void)table.flag(q0);
    auto& memo = Policy::memo(table);
    auto lookup = [&](NodeId p, NodeId q) -> std::optional<NodeId> {
        if (auto r = Policy::base(p, q)) {
            return r;
        }
        if (auto it = memo.find(commutative_key(p, q)); it != memo.end()) {
            return it->second;
        }
        return std::nullopt;
    };
    if (auto r = lookup(p0, q0)) {
        return *r;
    }

    const std::size_t m = table.letters();
    std::vector<BinaryFrame> stack;
    std::vector<NodeId> buffers;
    auto push = [&](NodeId p, NodeId q) {
        ++Policy::counter(table);
        stack.push_back({p, q, 0, buffers.size()});
        buffers.resize(buffers.size() + m);
    };
    push(p0, q0);

    NodeId result = kEmpty;
    while (!stack.empty()) {
        BinaryFrame& f = stack.back();
        bool descended = false;
        while (f.next < m) {
            const Letter a = f.next;
            const NodeId p2 = table.successor(f.p, a);
            const NodeId q2 = table.successor(f.q, a);
            if (p2 == f.p && q2 == f.q) {
                buffers[f.buffer + a] = kSelf;
            } else if (auto r = lookup(p2, q2)) {
                buffers[f.buffer + a] = *r;
            } else {
                push(p2, q2);
                descended = true;
                break;
            }
            ++f.next;
        }
        if (descended) {
            continue;
        }
        const bool flag = Policy::combine(table.flag(f.p), table.flag(f.q));
        const NodeId r = table.make({buffers.data() + f.buffer, m}, flag);
        memo.emplace(commutative_key(f.p, f.q), r);
        buffers.resize(f.buffer);
        stack.pop_back();
        if (stack.empty()) {
            result = r;
        } else {
            BinaryFrame& parent = stack.back();
            buffers[parent.buffer + parent.next] = r;
            ++parent.next;
        }
    }
    return result;
}

}  // namespace

NodeId complement(DiagramTable& table, NodeId q0) {
    auto& memo = table.complement_memo();
    auto lookup = [&](NodeId q) -> std::optional<NodeId> {
        if (q == kEmpty) {
            return kUniversal;
        }
        if (q == kUniversal) {
            return kEmpty;
        }
        if (q.value < memo.size() && !memo[q.value].is_self()) {
            return memo[q.value];
        }
        return std::nullopt;
    };
    (void)table.flag(q0);
    if (auto r = lookup(q0)) {
        return *r;
    }

    const std::size_t m = table.letters();
    struct Frame {
        NodeId q;
        Letter next;
        std::size_t buffer;
    };
    std::vector<Frame> stack;
    std::vector<NodeId> buffers;
    auto push = [&](NodeId q) {
        ++table.counters().complement_expansions;
        stack.push_back({q, 0, buffers.size()});
        buffers.resize(buffers.size() + m);
    };
    push(q0);

    NodeId result = kEmpty;
    while (!stack.empty()) {
        Frame& f = stack.back();
        bool descended = false;
        while (f.next < m) {
            const NodeId succ = table.raw_successor(f.q, f.next);
            if (succ.is_self()) {
                buffers[f.buffer + f.next] = kSelf;
            } else if (auto r = lookup(succ)) {
                buffers[f.buffer + f.next] = *r;
            } else {
                push(succ);
                descended = true;
                break;
            }
            ++f.next;
        }
        if (descended) {
            continue;
        }
        const NodeId r = table.make({buffers.data() + f.buffer, m}, !table.flag(f.q));
        if (memo.size() <= f.q.value) {
            memo.resize(table.size(), kSelf);
        }
        memo[f.q.value] = r;
        if (memo.size() <= r.value) {
            memo.resize(table.size(), kSelf);
        }
        memo[r.value] = f.q;
        buffers.resize(f.buffer);
        stack.pop_back();
        if (stack.empty()) {
            result = r;
        } else {
            Frame& parent = stack.back();
            buffers[parent.buffer + parent.next] = r;
            ++parent.next;
        }
    }
    return result;
}

NodeId intersect(DiagramTable& table, NodeId p, NodeId q) {
    return apply_binary<IntersectPolicy>(table, p, q);
}

NodeId unite(DiagramTable& table, NodeId p, NodeId q) {
    return apply_binary<UnionPolicy>(table, p, q);
}

NodeId difference(DiagramTable& table, NodeId p, NodeId q) {
    return intersect(table, p, complement(table, q));
}

ClosureResult letter_closure(DiagramTable& table, NodeId q0, Letter x) {
    (void)table.flag(q0);
    if (x >= table.letters()) {
        throw InputError("letter outside the table alphabet");
    }
    auto& memo = table.closure_memo();
    // L(q) ∪ L(q.x) ∪ L(q.xx) ∪ …; the x-chain ends in a self-loop.
    auto x_closed = [&](NodeId q) {
        NodeId acc = q;
        for (NodeId r = q; table.raw_successor(r, x) != kSelf;) {
            r = table.raw_successor(r, x);
            acc = unite(table, acc, r);
        }
        return acc;
    };
    auto lookup = [&](NodeId q) -> std::optional<NodeId> {
        if (q == kEmpty || q == kUniversal) {
            return q;
        }
        if (auto it = memo.find(pair_key(NodeId{x}, q)); it != memo.end()) {
            return it->second;
        }
        return std::nullopt;
    };

    struct Frame {
        NodeId q;
        Letter next;
        std::size_t buffer;
        bool contracted;
    };
    const std::size_t m = table.letters();
    std::vector<Frame> stack;
    std::vector<NodeId> buffers;
    std::unordered_map<std::uint32_t, std::size_t> on_path;
    ClosureResult result{kEmpty, false};

    const NodeId start = x_closed(q0);
    if (auto r = lookup(start)) {
        return {*r, false};
    }
    auto push = [&](NodeId q) {
        on_path.emplace(q.value, stack.size());
        stack.push_back({q, 0, buffers.size(), false});
        buffers.resize(buffers.size() + m);
    };
    push(start);

    while (!stack.empty()) {
        Frame& f = stack.back();
        bool descended = false;
        while (f.next < m) {
            const Letter a = f.next;
            const NodeId succ = a == x ? f.q : x_closed(table.successor(f.q, a));
            if (succ == f.q) {
                buffers[f.buffer + a] = kSelf;
            } else if (auto r = lookup(succ)) {
                buffers[f.buffer + a] = *r;
            } else if (auto it = on_path.find(succ.value); it != on_path.end()) {
                // A cycle of distinct unions: fold it, as in the subset construction of Pre.
                buffers[f.buffer + a] = kSelf;
                f.contracted = true;
                result.contracted = true;
            } else {
                push(succ);
                descended = true;
                break;
            }
            ++f.next;
        }
        if (descended) {
            continue;
        }
        const NodeId r = table.make({buffers.data() + f.buffer, m}, table.flag(f.q));
        on_path.erase(f.q.value);
        if (!f.contracted) {
            memo.emplace(pair_key(NodeId{x}, f.q), r);
        }
        const bool contracted = f.contracted;
        buffers.resize(f.buffer);
        stack.pop_back();
        if (stack.empty()) {
            result.node = r;
        } else {
            Frame& parent = stack.back();
            buffers[parent.buffer + parent.next] = r;
            parent.contracted = parent.contracted || contracted;
            ++parent.next;
        }
    }
    return result;
}

}  // namespace wad
