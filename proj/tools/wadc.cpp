// wadc: command-line front end for weakly acyclic diagrams.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "wad/checker.hpp"
#include "wad/dot.hpp"
#include "wad/error.hpp"
#include "wad/expr.hpp"
#include "wad/model_file.hpp"
#include "wad/ops.hpp"

namespace fs = std::filesystem;
using namespace wad;

namespace {

constexpr int kExitParse = 64;
constexpr int kExitNoInput = 66;

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::Safe:
            return 0;
        case Verdict::Unsafe:
            return 1;
        case Verdict::UnknownContracted:
            return 2;
        case Verdict::Limit:
            return 3;
    }
    return 3;
}

std::size_t env_node_limit() {
    const char* v = std::getenv("WAD_MAX_TABLE_NODES");
    if (v == nullptr || *v == '\0') {
        return 0;
    }
    try {
        return static_cast<std::size_t>(std::stoull(v));
    } catch (const std::exception&) {
        std::cerr << "wadc: ignoring malformed WAD_MAX_TABLE_NODES='" << v << "'\n";
        return 0;
    }
}

std::vector<std::string> split_letters(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string t; in >> t;) {
        out.push_back(t);
    }
    return out;
}

struct RunFlags {
    std::string engine = "general";
    std::string schedule = "breadth";
    std::optional<std::size_t> max_iters;
    std::optional<double> timeout;
    std::string stats;
    bool trace = false;
};

CheckOptions options_from(const RunFlags& f) {
    CheckOptions o;
    o.engine = f.engine == "compatible" ? Engine::Compatible : Engine::General;
    o.schedule = f.schedule == "sweep" ? Schedule::Sweep : Schedule::Breadth;
    o.max_iterations = f.max_iters;
    if (f.timeout) {
        o.timeout = std::chrono::milliseconds(static_cast<long long>(*f.timeout * 1000.0));
    }
    return o;
}

struct RunResult {
    CheckReport report;
    std::size_t final_nodes = 0;
};

RunResult run_model(const ModelFile& m, const CheckOptions& opts) {
    Instance inst = build_instance(m);
    inst.table.set_node_limit(env_node_limit());
    CheckOptions o = opts;
    o.pad_closure = inst.pad_closure;
    RunResult r;
    r.report = backward_reach(inst.table, inst.transducers, inst.target, inst.initial, o);
    r.final_nodes = inst.table.reachable_count(r.report.final_node);
    return r;
}

void append_stats(const std::string& path, const std::string& row) {
    const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
    std::ofstream out(path, std::ios::app | std::ios::binary);
    if (!out) {
        throw InputError("cannot write '" + path + "'");
    }
    if (fresh) {
        out << csv_header() << '\n';
    }
    out << row << '\n';
}

int run_check(const std::string& path, const RunFlags& flags) {
    ModelFile m;
    try {
        m = load_model(path);
    } catch (const ParseError& e) {
        std::cerr << path << ':' << e.what() << '\n';
        return kExitParse;
    } catch (const InputError& e) {
        std::cerr << "wadc: " << e.what() << '\n';
        return kExitNoInput;
    }
    CheckOptions opts = options_from(flags);
    if (flags.trace) {
        opts.trace = &std::cerr;
    }
    RunResult r;
    try {
        r = run_model(m, opts);
    } catch (const ParseError& e) {
        std::cerr << path << ": " << e.what() << '\n';
        return kExitParse;
    }
    const auto& rep = r.report;
    std::cout << to_string(rep.verdict) << '\n';
    std::cout << "iterations " << rep.iterations << '\n';
    std::cout << "final_nodes " << r.final_nodes << '\n';
    std::cout << "peak_table " << rep.peak_table << '\n';
    std::cout << "contractions " << rep.contractions << '\n';
    if (opts.engine == Engine::Compatible) {
        std::cout << "fallbacks " << rep.fallbacks << '\n';
    }
    if (!rep.limit_reason.empty()) {
        std::cout << "limit " << rep.limit_reason << '\n';
    }
    std::cout << "millis " << rep.elapsed.count() << '\n';
    if (!flags.stats.empty()) {
        append_stats(flags.stats, csv_row(fs::path(path).filename().string(), rep, r.final_nodes));
    }
    return exit_code(rep.verdict);
}

struct ExprFlags {
    std::string alphabet;
    std::string expr;
    bool complement = false;
    std::string intersect_with;
    std::string union_with;
    std::string difference_with;
    std::optional<std::string> member;
    std::optional<std::size_t> enumerate;
    bool dot = false;
};

int run_expr(const ExprFlags& f) {
    const Alphabet alphabet(split_letters(f.alphabet));
    DiagramTable table(alphabet);
    auto compile = [&](const std::string& text) { return compile_expr(table, parse_expr(text, alphabet)); };
    NodeId q = compile(f.expr);
    if (!f.intersect_with.empty()) {
        q = intersect(table, q, compile(f.intersect_with));
    }
    if (!f.union_with.empty()) {
        q = unite(table, q, compile(f.union_with));
    }
    if (!f.difference_with.empty()) {
        q = difference(table, q, compile(f.difference_with));
    }
    if (f.complement) {
        q = complement(table, q);
    }
    if (f.member) {
        std::cout << (table.member(q, alphabet.parse_word(*f.member)) ? "true" : "false") << '\n';
    } else if (f.enumerate) {
        std::string line;
        for (const auto& w : table.enumerate(q, *f.enumerate)) {
            line += (line.empty() ? "" : " ") + alphabet.render_compact(w);
        }
        std::cout << line << '\n';
    } else if (f.dot) {
        const NodeId roots[] = {q};
        std::cout << to_dot(table, roots);
    } else {
        std::cout << "node " << node_name(q) << '\n';
        std::cout << "reachable " << table.reachable_count(q) << '\n';
        std::cout << "empty " << (table.is_empty(q) ? "true" : "false") << '\n';
        std::cout << "universal " << (table.is_universal(q) ? "true" : "false") << '\n';
        std::cout << "table " << table.size() << '\n';
    }
    return 0;
}

std::vector<fs::path> model_files(const std::string& dir) {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(dir)) {
        const auto ext = e.path().extension().string();
        if (e.is_regular_file() && (ext == ".pn" || ext == ".lcs" || ext == ".bp")) {
            out.push_back(e.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int run_bench(const std::string& dir, const RunFlags& flags, unsigned jobs) {
    const auto files = model_files(dir);
    const CheckOptions opts = options_from(flags);
    struct Row {
        std::string csv;
        bool decided = false;
        double seconds = 0;
    };
    std::vector<Row> rows(files.size());
    std::atomic<std::size_t> next{0};
    std::mutex progress;
    auto worker = [&] {
        for (std::size_t i = next++; i < files.size(); i = next++) {
            const std::string name = files[i].filename().string();
            Row row;
            try {
                RunResult r = run_model(load_model(files[i].string()), opts);
                row.csv = csv_row(name, r.report, r.final_nodes);
                row.decided = r.report.verdict == Verdict::Safe || r.report.verdict == Verdict::Unsafe;
                row.seconds = static_cast<double>(r.report.elapsed.count()) / 1000.0;
            } catch (const std::exception& e) {
                row.csv = name + ",ERROR,0,0,0,0,0";
                std::lock_guard lock(progress);
                std::cerr << name << ": " << e.what() << '\n';
            }
            rows[i] = std::move(row);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < std::max(1u, jobs); ++j) {
        pool.emplace_back(worker);
    }
    for (auto& t : pool) {
        t.join();
    }

    std::cout << csv_header() << '\n';
    for (const auto& r : rows) {
        std::cout << r.csv << '\n';
        if (!flags.stats.empty()) {
            append_stats(flags.stats, r.csv);
        }
    }
    std::cout << '\n' << "seconds,decided\n";
    for (double bucket : {0.01, 0.1, 1.0, 10.0, 60.0, 600.0}) {
        const auto n = std::count_if(rows.begin(), rows.end(),
                                     [&](const Row& r) { return r.decided && r.seconds <= bucket; });
        std::cout << bucket << ',' << n << '\n';
    }
    return 0;
}

int run_dump(const std::string& model, const std::string& alphabet, const std::vector<std::string>& exprs,
             const std::string& out_path) {
    std::string text;
    if (!model.empty()) {
        Instance inst = build_instance(load_model(model));
        const NodeId roots[] = {inst.target, inst.initial};
        text = to_dot(inst.table, roots);
    } else {
        const Alphabet a(split_letters(alphabet));
        DiagramTable table(a);
        std::vector<NodeId> roots;
        for (const auto& e : exprs) {
            roots.push_back(compile_expr(table, parse_expr(e, a)));
        }
        text = to_dot(table, roots);
    }
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            throw InputError("cannot write '" + out_path + "'");
        }
        out << text;
    }
    return 0;
}

void add_run_flags(CLI::App* cmd, RunFlags& f) {
    cmd->add_option("--engine", f.engine, "Pre engine")->check(CLI::IsMember({"general", "compatible"}));
    cmd->add_option("--schedule", f.schedule, "Iteration schedule")->check(CLI::IsMember({"breadth", "sweep"}));
    cmd->add_option("--max-iters", f.max_iters, "Iteration limit")->check(CLI::PositiveNumber);
    cmd->add_option("--timeout", f.timeout, "Wall-clock limit in seconds")->check(CLI::PositiveNumber);
    cmd->add_option("--stats", f.stats, "Append one CSV row per instance to this file");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weakly acyclic diagrams and backward reachability"};
    app.require_subcommand(1);

    RunFlags check_flags;
    std::string check_path;
    auto* check = app.add_subcommand("check", "Decide a safety query given as a model file");
    check->add_option("model", check_path, "Model file")->required();
    add_run_flags(check, check_flags);
    check->add_flag("--trace", check_flags.trace, "Print one line per iteration to stderr");

    ExprFlags ef;
    auto* expr = app.add_subcommand("expr", "Compile and query weakly acyclic expressions");
    expr->add_option("-a,--alphabet", ef.alphabet, "Letters, space separated")->required();
    expr->add_option("expression", ef.expr, "Expression")->required();
    expr->add_flag("--complement", ef.complement, "Complement the result (applied last)");
    expr->add_option("--intersect", ef.intersect_with, "Intersect with another expression");
    expr->add_option("--union", ef.union_with, "Unite with another expression");
    expr->add_option("--difference", ef.difference_with, "Subtract another expression");
    expr->add_option("--member", ef.member, "Test membership of a space-separated word");
    expr->add_option("--enumerate", ef.enumerate, "List accepted words up to this length");
    expr->add_flag("--dot", ef.dot, "Print the diagram in DOT");

    RunFlags bench_flags;
    std::string bench_dir;
    unsigned jobs = 1;
    auto* bench = app.add_subcommand("bench", "Run every model file of a directory");
    bench->add_option("directory", bench_dir, "Directory of .pn/.lcs/.bp files")->required()->check(CLI::ExistingDirectory);
    add_run_flags(bench, bench_flags);
    bench->add_option("--jobs", jobs, "Parallel workers")->check(CLI::PositiveNumber);

    std::string dump_model, dump_alphabet, dump_out;
    std::vector<std::string> dump_exprs;
    auto* dump = app.add_subcommand("dump", "Print a diagram in DOT");
    dump->add_option("--model", dump_model, "Model file: dump its target and initial sets");
    dump->add_option("-a,--alphabet", dump_alphabet, "Letters for expressions");
    dump->add_option("expressions", dump_exprs, "Expressions to compile");
    dump->add_option("-o,--output", dump_out, "Output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*check) {
            return run_check(check_path, check_flags);
        }
        if (*expr) {
            return run_expr(ef);
        }
        if (*bench) {
            return run_bench(bench_dir, bench_flags, jobs);
        }
        if (*dump) {
            if (dump_model.empty() && (dump_alphabet.empty() || dump_exprs.empty())) {
                std::cerr << "wadc dump: give --model FILE or -a LETTERS EXPR...\n";
                return kExitParse;
            }
            return run_dump(dump_model, dump_alphabet, dump_exprs, dump_out);
        }
    } catch (const ParseError& e) {
        std::cerr << "wadc: " << e.what() << '\n';
        return kExitParse;
    } catch (const Error& e) {
        std::cerr << "wadc: " << e.what() << '\n';
        return kExitNoInput;
    }
    return 0;
}
