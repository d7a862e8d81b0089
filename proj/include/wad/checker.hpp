#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "wad/table.hpp"
#include "wad/transducer.hpp"

namespace wad {

enum class Verdict { Safe, Unsafe, UnknownContracted, Limit };

std::string to_string(Verdict v);

enum class Engine { General, Compatible };

/// Breadth: X_{i+1} = X_i ∪ ⋃_t Pre_t(X_i). Sweep: one iteration applies the
/// transducers in order, each to the set left by the previous one.
enum class Schedule { Breadth, Sweep };

struct CheckOptions {
    std::optional<std::size_t> max_iterations;
    std::optional<std::chrono::milliseconds> timeout;
    Engine engine = Engine::General;
    Schedule schedule = Schedule::Breadth;
    /// When set, every iterate is closed under inserting and deleting this
    /// letter, so only pad-free contents matter.
    std::optional<Letter> pad_closure;
    /// When set, one line per iteration is written here.
    std::ostream* trace = nullptr;
};

struct CheckReport {
    Verdict verdict = Verdict::Limit;
    std::size_t iterations = 0;
    bool contraction_occurred = false;
    std::uint64_t contractions = 0;
    NodeId final_node = kEmpty;
    /// reachable_count of X_0, X_1, …
    std::vector<std::size_t> reachable_counts;
    std::size_t peak_table = 0;
    std::chrono::milliseconds elapsed{0};
    /// Pre computations the compatible engine had to hand to the general one.
    std::uint64_t fallbacks = 0;
    /// Why a LIMIT verdict was reached.
    std::string limit_reason;
};

/// Backward reachability: X_0 = target, X_{i+1} = X_i ∪ ⋃_t Pre_t(X_i),
/// until X_{i+1} = X_i or X_i meets the initial set.
CheckReport backward_reach(DiagramTable& table, std::span<const TransducerNfa> transducers, NodeId target,
                           NodeId initial, const CheckOptions& options = {});

/// Same, with a single initial word.
CheckReport backward_reach(DiagramTable& table, std::span<const TransducerNfa> transducers, NodeId target,
                           const Word& init_word, const CheckOptions& options = {});

std::string csv_header();
std::string csv_row(const std::string& instance, const CheckReport& report, std::size_t final_nodes);

}  // namespace wad
