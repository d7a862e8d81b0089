#include "wad/table.hpp"

#include <algorithm>
#include <atomic>
#include <string>

#include "wad/error.hpp"

namespace wad {

namespace {

constexpr std::uint32_t kFreeSlot = std::numeric_limits<std::uint32_t>::max();

std::uint64_t next_table_uid() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1, std::memory_order_relaxed);
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

}  // namespace

DiagramTable::DiagramTable(Alphabet alphabet)
    : alphabet_(std::move(alphabet)), width_(alphabet_.size()), uid_(next_table_uid()) {
    if (width_ == 0) {
        throw InputError("a diagram table needs a non-empty alphabet");
    }
    rehash(64);
    for (bool flag : {false, true}) {
        succ_.insert(succ_.end(), width_, kSelf);
        flags_.push_back(flag ? 1 : 0);
        index_insert(static_cast<std::uint32_t>(flags_.size() - 1));
    }
}

std::size_t DiagramTable::checked(NodeId q) const {
    if (!contains(q)) {
        throw InputError("unknown node id " + std::to_string(q.value));
    }
    return q.value;
}

std::uint64_t DiagramTable::hash_of(const NodeId* succ, bool flag) const {
    std::uint64_t h = flag ? 0x51ed27 : 0x2545f4;
    for (std::size_t i = 0; i < width_; ++i) {
        h = mix(h, succ[i].value);
    }
    return h;
}

std::uint32_t DiagramTable::find_slot(const NodeId* succ, bool flag, std::uint64_t h) const {
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t i = h & mask;; i = (i + 1) & mask) {
        const std::uint32_t id = slots_[i];
        if (id == kFreeSlot) {
            return kFreeSlot;
        }
        if ((flags_[id] != 0) == flag &&
            std::equal(succ, succ + width_, succ_.begin() + static_cast<std::ptrdiff_t>(id * width_))) {
            return id;
        }
    }
}

void DiagramTable::index_insert(std::uint32_t id) {
    if ((flags_.size() + 1) * 2 > slots_.size()) {
        rehash(slots_.size() * 2);
    }
    const std::size_t mask = slots_.size() - 1;
    const std::uint64_t h = hash_of(succ_.data() + id * width_, flags_[id] != 0);
    std::size_t i = h & mask;
    while (slots_[i] != kFreeSlot) {
        i = (i + 1) & mask;
    }
    slots_[i] = id;
}

void DiagramTable::rehash(std::size_t capacity) {
    slots_.assign(capacity, kFreeSlot);
    const std::size_t mask = capacity - 1;
    for (std::uint32_t id = 0; id < flags_.size(); ++id) {
        std::size_t i = hash_of(succ_.data() + id * width_, flags_[id] != 0) & mask;
        while (slots_[i] != kFreeSlot) {
            i = (i + 1) & mask;
        }
        slots_[i] = id;
    }
}

NodeId DiagramTable::make(std::span<const NodeId> succ_in, bool flag) {
    ++counters_.make_calls;
    if (succ_in.size() != width_) {
        throw InputError("successor tuple has width " + std::to_string(succ_in.size()) + ", expected " +
                         std::to_string(width_));
    }
    // The caller may hand us a view into our own arena.
    SuccessorTuple s(succ_in.begin(), succ_in.end());
    NodeId max_entry = kSelf;
    for (NodeId e : s) {
        if (e.is_self()) {
            continue;
        }
        if (e.value >= size()) {
            throw InputError("dangling successor id " + std::to_string(e.value));
        }
        if (max_entry.is_self() || e > max_entry) {
            max_entry = e;
        }
    }

    if (auto id = find_slot(s.data(), flag, hash_of(s.data(), flag)); id != kFreeSlot) {
        return NodeId{id};
    }
    // An all-SELF tuple always hits nodes 0 or 1 above.
    SuccessorTuple folded = s;
    std::replace(folded.begin(), folded.end(), max_entry, kSelf);
    // L(s, b) = L(q') exactly when q' itself is stored as (s[q'/SELF], b);
    // any other node found under the folded tuple has a different language.
    if (auto id = find_slot(folded.data(), flag, hash_of(folded.data(), flag)); id == max_entry.value) {
        return max_entry;
    }

    if (node_limit_ != 0 && size() >= node_limit_) {
        throw TableLimitExceeded("node table limit of " + std::to_string(node_limit_) + " reached");
    }
    const auto id = static_cast<std::uint32_t>(size());
    succ_.insert(succ_.end(), s.begin(), s.end());
    flags_.push_back(flag ? 1 : 0);
    index_insert(id);
    return NodeId{id};
}

bool DiagramTable::member(NodeId q, const Word& w) const {
    checked(q);
    for (Letter a : w) {
        if (a >= width_) {
            throw InputError("letter index " + std::to_string(a) + " outside the alphabet");
        }
        if (q == kEmpty || q == kUniversal) {
            break;
        }
        q = successor(q, a);
    }
    return flag(q);
}

bool DiagramTable::member(NodeId q, std::string_view tokens) const {
    return member(q, alphabet_.parse_word(tokens));
}

std::vector<Word> DiagramTable::enumerate(NodeId q, std::size_t maxlen) const {
    checked(q);
    std::vector<Word> out;
    std::vector<std::pair<Word, NodeId>> layer{{Word{}, q}};
    for (std::size_t len = 0;; ++len) {
        for (const auto& [w, node] : layer) {
            if (flag(node)) {
                out.push_back(w);
            }
        }
        if (len == maxlen) {
            break;
        }
        std::vector<std::pair<Word, NodeId>> next;
        for (const auto& [w, node] : layer) {
            for (Letter a = 0; a < width_; ++a) {
                NodeId r = successor(node, a);
                if (r == kEmpty) {
                    continue;
                }
                Word w2 = w;
                w2.push_back(a);
                next.emplace_back(std::move(w2), r);
            }
        }
        if (next.empty()) {
            break;
        }
        layer = std::move(next);
    }
    return out;
}

std::vector<NodeId> DiagramTable::reachable(NodeId q) const {
    checked(q);
    std::vector<char> seen(size(), 0);
    std::vector<NodeId> stack{q};
    seen[q.value] = 1;
    while (!stack.empty()) {
        NodeId n = stack.back();
        stack.pop_back();
        for (NodeId r : successors(n)) {
            if (!r.is_self() && !seen[r.value]) {
                seen[r.value] = 1;
                stack.push_back(r);
            }
        }
    }
    std::vector<NodeId> out;
    for (std::uint32_t i = 0; i < seen.size(); ++i) {
        if (seen[i]) {
            out.push_back(NodeId{i});
        }
    }
    return out;
}

void DiagramTable::check_invariants() const {
    for (std::uint32_t id = 0; id < size(); ++id) {
        auto s = successors(NodeId{id});
        const bool all_self = std::all_of(s.begin(), s.end(), [](NodeId e) { return e.is_self(); });
        if (id < 2) {
            if (!all_self || flag(NodeId{id}) != (id == 1)) {
                throw Error("reserved node " + std::to_string(id) + " is corrupted");
            }
        } else if (all_self) {
            throw Error("node " + std::to_string(id) + " has an all-SELF tuple");
        }
        for (NodeId e : s) {
            if (!e.is_self() && e.value >= id) {
                throw Error("node " + std::to_string(id) + " has a successor " + std::to_string(e.value) +
                            " that is not older");
            }
        }
        const bool f = flag(NodeId{id});
        if (find_slot(s.data(), f, hash_of(s.data(), f)) != id) {
            throw Error("node " + std::to_string(id) + " is not uniquely indexed");
        }
    }
}

}  // namespace wad
