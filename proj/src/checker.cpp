#include "wad/checker.hpp"

#include <memory>

#include "wad/encoders.hpp"
#include "wad/error.hpp"
#include "wad/ops.hpp"
#include "wad/oracle.hpp"
#include "wad/relation.hpp"

namespace wad {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Safe:
            return "SAFE";
        case Verdict::Unsafe:
            return "UNSAFE";
        case Verdict::UnknownContracted:
            return "UNKNOWN_CONTRACTED";
        case Verdict::Limit:
            return "LIMIT";
    }
    return "LIMIT";
}

namespace {

using Clock = std::chrono::steady_clock;

class PreEngine {
public:
    PreEngine(DiagramTable& table, std::span<const TransducerNfa> transducers, Engine engine)
        : table_(table), transducers_(transducers) {
        if (engine != Engine::Compatible) {
            return;
        }
        relations_ = std::make_unique<DiagramTable>(Alphabet::product(table.alphabet()));
        relations_->set_node_limit(table.node_limit());
        for (const auto& t : transducers) {
            try {
                relation_nodes_.push_back(relation_from_transducer(*relations_, t));
            } catch (const NotWeaklyAcyclic&) {
                relation_nodes_.push_back(std::nullopt);
            }
        }
    }

    PreResult pre(std::size_t i, NodeId q, const PreOptions& options) {
        if (relations_ && relation_nodes_[i]) {
            if (check_pre_compatibility(*relations_, *relation_nodes_[i], table_, q)) {
                return {pre_compatible(*relations_, *relation_nodes_[i], table_, q), false};
            }
        }
        if (relations_) {
            ++fallbacks_;
        }
        return pre_general(table_, transducers_[i], q, options);
    }

    std::uint64_t fallbacks() const { return fallbacks_; }

private:
    DiagramTable& table_;
    std::span<const TransducerNfa> transducers_;
    std::unique_ptr<DiagramTable> relations_;
    std::vector<std::optional<NodeId>> relation_nodes_;
    std::uint64_t fallbacks_ = 0;
};

}  // namespace

CheckReport backward_reach(DiagramTable& table, std::span<const TransducerNfa> transducers, NodeId target,
                           NodeId initial, const CheckOptions& options) {
    for (const auto& t : transducers) {
        if (!(t.base_alphabet() == table.alphabet())) {
            throw AlphabetMismatch("transducer alphabet does not match the table alphabet");
        }
    }
    (void)table.flag(target);
    (void)table.flag(initial);

    const auto start = Clock::now();
    CheckReport report;
    PreStats stats;
    PreOptions pre_options;
    pre_options.stats = &stats;
    if (options.timeout) {
        pre_options.deadline = start + *options.timeout;
    }

    auto close = [&](NodeId q) {
        if (!options.pad_closure) {
            return q;
        }
        const ClosureResult c = letter_closure(table, q, *options.pad_closure);
        if (c.contracted) {
            report.contraction_occurred = true;
            ++stats.contractions;
        }
        return c.node;
    };
    NodeId x = close(target);
    report.reachable_counts.push_back(table.reachable_count(x));
    bool unsafe = false;
    bool fixpoint = false;
    try {
        PreEngine engine(table, transducers, options.engine);
        while (true) {
            if (intersect(table, x, initial) != kEmpty) {
                unsafe = true;
                break;
            }
            if (options.max_iterations && report.iterations >= *options.max_iterations) {
                report.limit_reason = "iteration limit";
                break;
            }
            if (pre_options.deadline && Clock::now() > *pre_options.deadline) {
                report.limit_reason = "timeout";
                break;
            }
            NodeId next = x;
            for (std::size_t i = 0; i < transducers.size(); ++i) {
                const NodeId source = options.schedule == Schedule::Sweep ? next : x;
                PreResult r = engine.pre(i, source, pre_options);
                report.contraction_occurred = report.contraction_occurred || r.contracted;
                next = unite(table, next, close(r.node));
            }
            ++report.iterations;
            report.reachable_counts.push_back(table.reachable_count(next));
            if (options.trace) {
                *options.trace << "iteration " << report.iterations << " nodes " << report.reachable_counts.back()
                               << " table " << table.size() << '\n';
            }
            if (next == x) {
                fixpoint = true;
                break;
            }
            x = next;
        }
        report.fallbacks = engine.fallbacks();
    } catch (const DeadlineExceeded&) {
        report.limit_reason = "timeout";
    } catch (const TableLimitExceeded&) {
        report.limit_reason = "table limit";
    }

    report.contractions = stats.contractions;
    report.final_node = x;
    report.peak_table = table.size();
    report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
    if (!unsafe && !fixpoint) {
        report.verdict = Verdict::Limit;
    } else if (report.contraction_occurred) {
        report.verdict = Verdict::UnknownContracted;
    } else {
        report.verdict = unsafe ? Verdict::Unsafe : Verdict::Safe;
    }
    return report;
}

CheckReport backward_reach(DiagramTable& table, std::span<const TransducerNfa> transducers, NodeId target,
                           const Word& init_word, const CheckOptions& options) {
    return backward_reach(table, transducers, target, word_node(table, init_word), options);
}

std::string csv_header() { return "instance,verdict,iterations,final_nodes,peak_table,contractions,millis"; }

std::string csv_row(const std::string& instance, const CheckReport& report, std::size_t final_nodes) {
    std::string name = instance;
    if (name.find_first_of(",\"\n") != std::string::npos) {
        std::string quoted = "\"";
        for (char c : name) {
            if (c == '"') {
                quoted += '"';
            }
            quoted += c;
        }
        name = quoted + "\"";
    }
    return name + ',' + to_string(report.verdict) + ',' + std::to_string(report.iterations) + ',' +
           std::to_string(final_nodes) + ',' + std::to_string(report.peak_table) + ',' +
           std::to_string(report.contractions) + ',' + std::to_string(report.elapsed.count());
}

}  // namespace wad
