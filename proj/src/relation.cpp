#include "wad/relation.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "wad/error.hpp"

namespace wad {

namespace {

/// Canonical subset of (transducer state, node) pairs, each packed into one
/// 64-bit word; kept sorted and duplicate-free.
using Subset = std::vector<std::uint64_t>;

struct SubsetHash {
    std::size_t operator()(const Subset& s) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ULL ^ s.size();
        for (std::uint64_t x : s) {
            h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

struct PreMemoEntry {
    NodeId node;
    bool contracted;
};

using PreMemo = std::unordered_map<Subset, PreMemoEntry, SubsetHash>;

StateId state_of(std::uint64_t x) { return static_cast<StateId>(x >> 32); }
NodeId node_of(std::uint64_t x) { return NodeId{static_cast<std::uint32_t>(x)}; }
std::uint64_t pack(StateId p, NodeId q) { return (static_cast<std::uint64_t>(p) << 32) | q.value; }

}  // namespace

struct RelationMemo {
    std::unordered_map<std::uint64_t, PreMemo> general;
    std::unordered_map<std::uint64_t, std::unordered_map<std::uint64_t, NodeId>> compatible;
    std::unordered_map<std::uint64_t, std::unordered_set<std::uint64_t>> compatible_pairs;
};

namespace {

RelationMemo& memo_of(DiagramTable& table) {
    auto& slot = table.relation_memo();
    if (!slot) {
        slot = std::make_shared<RelationMemo>();
    }
    return *slot;
}

/// Transducer states from which an accepting state is reachable.
std::vector<char> productive_states(const TransducerNfa& t) {
    const std::size_t n = t.state_count();
    std::vector<std::vector<StateId>> reverse(n);
    for (const auto& tr : t.transitions()) {
        reverse[tr.to].push_back(tr.from);
    }
    std::vector<char> productive(n, 0);
    std::vector<StateId> stack;
    for (StateId p = 0; p < n; ++p) {
        if (t.is_accepting(p)) {
            productive[p] = 1;
            stack.push_back(p);
        }
    }
    while (!stack.empty()) {
        StateId p = stack.back();
        stack.pop_back();
        for (StateId r : reverse[p]) {
            if (!productive[r]) {
                productive[r] = 1;
                stack.push_back(r);
            }
        }
    }
    return productive;
}

class SubsetConstruction {
public:
    SubsetConstruction(DiagramTable& table, const TransducerNfa& t, const PreOptions& options, PreMemo* memo)
        : table_(table), t_(t), options_(options), memo_(memo), productive_(productive_states(t)) {}

    PreResult run(NodeId q) {
        (void)table_.flag(q);
        Subset start;
        if (productive_[t_.initial()] && q != kEmpty) {
            start.push_back(pack(t_.initial(), q));
        }
        if (start.empty()) {
            return {kEmpty, false};
        }
        if (auto hit = memo_lookup(start)) {
            return {hit->node, hit->contracted};
        }
        push(std::move(start));
        PreResult result{kEmpty, false};
        while (!stack_.empty()) {
            if (advance()) {
                continue;
            }
            Frame done = finish();
            if (stack_.empty()) {
                result = {done.node, any_contraction_};
            }
        }
        return result;
    }

private:
    static constexpr std::size_t kNoLow = std::numeric_limits<std::size_t>::max();

    struct Frame {
        Subset key;
        std::size_t depth = 0;
        Letter next = 0;
        std::size_t buffer = 0;
        std::size_t low = kNoLow;
        bool contracted = false;
        NodeId node = kEmpty;
        std::vector<std::pair<Letter, NodeId>> edges;
    };

    const PreMemoEntry* memo_lookup(const Subset& s) {
        if (memo_ == nullptr) {
            return nullptr;
        }
        auto it = memo_->find(s);
        if (it == memo_->end()) {
            return nullptr;
        }
        if (options_.stats) {
            ++options_.stats->memo_hits;
        }
        return &it->second;
    }

    void push(Subset key) {
        ++table_.counters().pre_general_expansions;
        if (options_.stats) {
            ++options_.stats->expansions;
            options_.stats->max_depth = std::max(options_.stats->max_depth, stack_.size() + 1);
            options_.stats->max_subset = std::max(options_.stats->max_subset, key.size());
        }
        if (options_.deadline && (++ticks_ & 0x3FF) == 1 &&
            std::chrono::steady_clock::now() > *options_.deadline) {
            throw DeadlineExceeded("deadline passed during pre computation");
        }
        const std::size_t depth = stack_.size();
        on_path_.emplace(key, depth);
        Frame f;
        f.key = std::move(key);
        f.depth = depth;
        f.buffer = buffers_.size();
        buffers_.resize(buffers_.size() + table_.letters());
        stack_.push_back(std::move(f));
    }

    Subset successor_subset(const Subset& s, Letter a) const {
        Subset out;
        for (std::uint64_t x : s) {
            const NodeId q = node_of(x);
            for (const auto& mv : t_.moves(state_of(x), a)) {
                if (!productive_[mv.to]) {
                    continue;
                }
                const NodeId q2 = table_.successor(q, mv.out);
                if (q2 != kEmpty) {
                    out.push_back(pack(mv.to, q2));
                }
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    // Fills successor entries of the top frame until one needs a recursive
    // expansion; returns true when it pushed a child.
    bool advance() {
        const std::size_t m = table_.letters();
        while (true) {
            Frame& f = stack_.back();
            if (f.next >= m) {
                return false;
            }
            const Letter a = f.next;
            Subset next = successor_subset(f.key, a);
            NodeId entry;
            if (next.empty()) {
                entry = kEmpty;
            } else if (next == f.key) {
                entry = kSelf;
            } else if (auto it = on_path_.find(next); it != on_path_.end()) {
                // A subset on the current path: contract the cycle.
                entry = kSelf;
                f.low = std::min(f.low, it->second);
                f.contracted = true;
                any_contraction_ = true;
                if (options_.stats) {
                    ++options_.stats->contractions;
                }
                buffers_[f.buffer + a] = entry;
                ++f.next;
                continue;
            } else if (auto hit = memo_lookup(next)) {
                entry = hit->node;
                if (hit->contracted) {
                    f.contracted = true;
                    any_contraction_ = true;
                }
            } else {
                push(std::move(next));
                return true;
            }
            buffers_[f.buffer + a] = entry;
            if (options_.trace) {
                f.edges.emplace_back(a, entry);
            }
            ++f.next;
        }
    }

    Frame finish() {
        const std::size_t m = table_.letters();
        Frame f = std::move(stack_.back());
        stack_.pop_back();
        on_path_.erase(f.key);

        bool flag = false;
        for (std::uint64_t x : f.key) {
            if (t_.is_accepting(state_of(x)) && table_.flag(node_of(x))) {
                flag = true;
                break;
            }
        }
        f.node = table_.make({buffers_.data() + f.buffer, m}, flag);
        buffers_.resize(f.buffer);

        if (options_.trace) {
            for (auto [a, to] : f.edges) {
                options_.trace->push_back({f.node, a, to.is_self() ? f.node : to});
            }
        }
        // Only subsets whose subtree never folded into a strict ancestor are
        // independent of the path they were reached on.
        if (memo_ != nullptr && (f.low == kNoLow || f.low >= f.depth)) {
            memo_->emplace(f.key, PreMemoEntry{f.node, f.contracted});
        }
        if (!stack_.empty()) {
            Frame& parent = stack_.back();
            buffers_[parent.buffer + parent.next] = f.node;
            if (options_.trace) {
                parent.edges.emplace_back(parent.next, f.node);
            }
            ++parent.next;
            parent.low = std::min(parent.low, f.low);
            parent.contracted = parent.contracted || f.contracted;
        }
        return f;
    }

    DiagramTable& table_;
    const TransducerNfa& t_;
    const PreOptions& options_;
    PreMemo* memo_;
    std::vector<char> productive_;
    std::vector<Frame> stack_;
    std::vector<NodeId> buffers_;
    std::unordered_map<Subset, std::size_t, SubsetHash> on_path_;
    bool any_contraction_ = false;
    std::uint64_t ticks_ = 0;
};

}  // namespace

PreResult pre_general(DiagramTable& table, const TransducerNfa& t, NodeId q, const PreOptions& options) {
    if (!(t.base_alphabet() == table.alphabet())) {
        throw AlphabetMismatch("transducer alphabet does not match the table alphabet");
    }
    PreMemo* memo = options.memoize ? &memo_of(table).general[t.uid()] : nullptr;
    return SubsetConstruction(table, t, options, memo).run(q);
}

PreResult post_general(DiagramTable& table, const TransducerNfa& t, NodeId q, const PreOptions& options) {
    if (!(t.base_alphabet() == table.alphabet())) {
        throw AlphabetMismatch("transducer alphabet does not match the table alphabet");
    }
    const TransducerNfa reversed = transpose_transducer(t);
    // The transposed transducer is a temporary, so keep its memo local.
    PreMemo local;
    return SubsetConstruction(table, reversed, options, options.memoize ? &local : nullptr).run(q);
}

void require_product_alphabet(const DiagramTable& relation, const DiagramTable& base) {
    const std::size_t m = base.letters();
    if (relation.letters() != m * m || !(relation.alphabet() == Alphabet::product(base.alphabet()))) {
        throw AlphabetMismatch("relation table is not over the product alphabet of the base table");
    }
}

CompatibilityResult check_pre_compatibility(DiagramTable& relation, NodeId p, DiagramTable& base, NodeId q) {
    require_product_alphabet(relation, base);
    (void)relation.flag(p);
    (void)base.flag(q);
    auto& known = memo_of(base).compatible_pairs[relation.uid()];
    const std::size_t m = base.letters();

    std::vector<std::uint64_t> work{pair_key(p, q)};
    std::unordered_set<std::uint64_t> seen{pair_key(p, q)};
    while (!work.empty()) {
        const std::uint64_t key = work.back();
        work.pop_back();
        if (known.contains(key)) {
            continue;
        }
        const NodeId rp{static_cast<std::uint32_t>(key >> 32)};
        const NodeId bq{static_cast<std::uint32_t>(key)};
        for (Letter a = 0; a < m; ++a) {
            std::optional<Letter> viable;
            for (Letter b = 0; b < m; ++b) {
                const NodeId p2 = relation.successor(rp, pair_letter(a, b, m));
                const NodeId q2 = base.successor(bq, b);
                if (p2 == kEmpty || q2 == kEmpty) {
                    continue;
                }
                if (viable) {
                    CompatibilityResult fail;
                    fail.compatible = false;
                    fail.input = a;
                    fail.first = *viable;
                    fail.second = b;
                    fail.relation_node = rp;
                    fail.node = bq;
                    return fail;
                }
                viable = b;
                const std::uint64_t child = pair_key(p2, q2);
                if (child != key && seen.insert(child).second) {
                    work.push_back(child);
                }
            }
        }
    }
    known.insert(seen.begin(), seen.end());
    return {};
}

NodeId pre_compatible(DiagramTable& relation, NodeId p0, DiagramTable& base, NodeId q0) {
    require_product_alphabet(relation, base);
    (void)relation.flag(p0);
    (void)base.flag(q0);
    auto& memo = memo_of(base).compatible[relation.uid()];
    const std::size_t m = base.letters();

    auto lookup = [&](NodeId p, NodeId q) -> std::optional<NodeId> {
        if (p == kEmpty || q == kEmpty) {
            return kEmpty;
        }
        if (auto it = memo.find(pair_key(p, q)); it != memo.end()) {
            return it->second;
        }
        return std::nullopt;
    };
    if (auto r = lookup(p0, q0)) {
        return *r;
    }

    struct Frame {
        NodeId p;
        NodeId q;
        Letter next;
        std::size_t buffer;
    };
    std::vector<Frame> stack;
    std::vector<NodeId> buffers;
    auto push = [&](NodeId p, NodeId q) {
        ++base.counters().pre_compatible_expansions;
        stack.push_back({p, q, 0, buffers.size()});
        buffers.resize(buffers.size() + m);
    };
    push(p0, q0);

    NodeId result = kEmpty;
    while (!stack.empty()) {
        Frame& f = stack.back();
        bool descended = false;
        while (f.next < m) {
            const Letter a = f.next;
            std::optional<Letter> viable;
            for (Letter b = 0; b < m; ++b) {
                if (relation.successor(f.p, pair_letter(a, b, m)) != kEmpty && base.successor(f.q, b) != kEmpty) {
                    if (viable) {
                        throw Error("pre_compatible: input letter '" + base.alphabet().token(a) +
                                    "' has two viable output letters; the operands are not pre-compatible");
                    }
                    viable = b;
                }
            }
            NodeId entry = kEmpty;
            if (viable) {
                const NodeId p2 = relation.successor(f.p, pair_letter(a, *viable, m));
                const NodeId q2 = base.successor(f.q, *viable);
                if (p2 == f.p && q2 == f.q) {
                    entry = kSelf;
                } else if (auto r = lookup(p2, q2)) {
                    entry = *r;
                } else {
                    push(p2, q2);
                    descended = true;
                    break;
                }
            }
            buffers[f.buffer + a] = entry;
            ++f.next;
        }
        if (descended) {
            continue;
        }
        const bool flag = relation.flag(f.p) && base.flag(f.q);
        const NodeId r = base.make({buffers.data() + f.buffer, m}, flag);
        memo.emplace(pair_key(f.p, f.q), r);
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

}  // namespace wad
