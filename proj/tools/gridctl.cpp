// gridctl: solve, kernelize, generate, verify and benchmark grid
// contraction instances.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gridct/bgc.hpp"
#include "gridct/gc.hpp"
#include "gridct/gen.hpp"
#include "gridct/graph_io.hpp"
#include "gridct/kernelize.hpp"
#include "gridct/oracle.hpp"
#include "gridct/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fs = std::filesystem;
using namespace gridct;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;
constexpr int kExitOracleDisagree = 4;

struct ModeSpec {
    enum class Kind { grid, path, bounded, annotated } kind = Kind::grid;
    int r = 0, q = 0;
    Corners corners;
};

ModeSpec parse_mode(const std::string& text) {
    ModeSpec m;
    if (text == "grid") {
        m.kind = ModeSpec::Kind::grid;
    } else if (text == "path") {
        m.kind = ModeSpec::Kind::path;
    } else if (text.rfind("bounded:", 0) == 0) {
        m.kind = ModeSpec::Kind::bounded;
        m.r = std::stoi(text.substr(8));
    } else if (text.rfind("annotated:", 0) == 0) {
        m.kind = ModeSpec::Kind::annotated;
        std::istringstream ls(text.substr(10));
        char comma;
        if (!(ls >> m.r >> comma >> m.q >> comma >> m.corners.x1 >> comma >> m.corners.x2 >>
              comma >> m.corners.x3 >> comma >> m.corners.x4))
            throw parse_error("bad annotated mode, expected annotated:r,q,x1,x2,x3,x4");
    } else {
        throw parse_error("unknown mode '" + text + "'");
    }
    return m;
}

struct SolveOutcome {
    bool yes = false;
    std::optional<WitnessMap> certificate;
    SolveStats stats;
    bool reduced_form = false;
    std::optional<Graph> reduced_graph;
    std::vector<int> old_to_new;
};

SolveOutcome run_solver(const Graph& g, int k, const ModeSpec& mode, const GcOptions& gc_opts) {
    SolveOutcome out;
    SolveOptions so;
    so.time_limit = gc_opts.time_limit;
    switch (mode.kind) {
        case ModeSpec::Kind::grid: {
            auto res = solve(g, k, gc_opts);
            out.yes = res.yes;
            out.certificate = std::move(res.certificate);
            out.stats = res.stats;
            out.reduced_form = res.reduced_form;
            out.reduced_graph = std::move(res.reduced_graph);
            out.old_to_new = std::move(res.old_to_new);
            break;
        }
        case ModeSpec::Kind::path: {
            auto res = solve_path(g, k, so);
            out.yes = res.yes;
            out.certificate = std::move(res.certificate);
            out.stats = res.stats;
            break;
        }
        case ModeSpec::Kind::bounded: {
            auto res = solve_bounded(g, k, mode.r, so);
            out.yes = res.yes;
            out.certificate = std::move(res.certificate);
            out.stats = res.stats;
            break;
        }
        case ModeSpec::Kind::annotated: {
            auto res = solve_annotated(g, k, mode.r, mode.q, mode.corners, so);
            out.yes = res.yes;
            out.certificate = std::move(res.certificate);
            out.stats = res.stats;
            break;
        }
    }
    return out;
}

void write_solution_certificate(const std::string& path, const SolveOutcome& out) {
    Certificate cert;
    cert.yes = out.yes;
    if (out.yes) {
        cert.map = *out.certificate;
        const int n = out.reduced_form ? out.reduced_graph->vertex_count()
                                       : static_cast<int>(out.certificate->cell.size()) - 1;
        cert.cost = n - cert.map.rows * cert.map.cols;
        cert.reduced_form = out.reduced_form;
    }
    std::ofstream f(path);
    if (!f) throw parse_error("cannot open " + path + " for writing");
    std::vector<std::string> comments;
    if (out.reduced_form) {
        for (size_t v = 1; v < out.old_to_new.size(); ++v)
            comments.push_back("map " + std::to_string(v) + " " +
                               std::to_string(out.old_to_new[v]));
    }
    write_certificate(f, cert, comments);
    if (out.reduced_form) {
        write_graph_file(path + ".reduced.gr", *out.reduced_graph,
                         {"reduced graph for certificate " + fs::path(path).filename().string()});
    }
}

int cmd_solve(const std::string& input, int k, const std::string& mode_text,
              const std::string& cert_path, bool oracle_check, long long budget,
              bool branching_sep, long long time_limit_ms) {
    ModeSpec mode = parse_mode(mode_text);
    auto gf = parse_graph_file(input);
    GcOptions opts;
    opts.branching_separator = branching_sep;
    if (time_limit_ms > 0) opts.time_limit = std::chrono::milliseconds(time_limit_ms);
    auto out = run_solver(gf.graph, k, mode, opts);
    if (out.reduced_form) std::cout << "c reduced-form certificate\n";
    std::cout << (out.yes ? "s YES" : "s NO") << "\n";
    if (!cert_path.empty()) write_solution_certificate(cert_path, out);
    if (oracle_check) {
        if (mode.kind == ModeSpec::Kind::bounded || mode.kind == ModeSpec::Kind::annotated) {
            std::cerr << "oracle check supports grid and path modes only\n";
            return kExitOk;
        }
        OracleOptions oo;
        oo.budget = budget;
        if (mode.kind == ModeSpec::Kind::path) oo.target = GridTarget::path;
        auto verdict = brute_force_grid(gf.graph, k, oo);
        if (verdict.answer == Verdict::Answer::budget) {
            std::cerr << "oracle check skipped: budget exhausted after " << verdict.explored
                      << " subsets\n";
            return kExitOk;
        }
        const bool oracle_yes = verdict.answer == Verdict::Answer::yes;
        if (oracle_yes != out.yes) {
            std::cerr << "ORACLE DISAGREEMENT: solver says " << (out.yes ? "YES" : "NO")
                      << ", brute force says " << (oracle_yes ? "YES" : "NO") << "\n";
            return kExitOracleDisagree;
        }
        std::cout << "c oracle-check ok\n";
    }
    return kExitOk;
}

int cmd_kernelize(const std::string& input, int k, const std::string& output) {
    auto gf = parse_graph_file(input);
    auto rep = kernelize(gf.graph, k);
    if (rep.outcome == KernelReport::Outcome::no_instance) {
        std::cout << "s NO\n";
        return kExitOk;
    }
    std::cout << "kernel n=" << rep.kernel_graph->vertex_count()
              << " m=" << rep.kernel_graph->edge_count() << " bound=" << rep.vertex_bound << "\n";
    if (!output.empty()) {
        write_graph_file(output, *rep.kernel_graph,
                         {"kernel k=" + std::to_string(k) +
                          " rr3=" + std::to_string(rep.rr3_applications)});
    }
    return kExitOk;
}

int cmd_verify(const std::string& input, const std::string& cert_path, int k) {
    auto gf = parse_graph_file(input);
    std::ifstream cf(cert_path);
    if (!cf) throw parse_error("cannot open " + cert_path);
    auto cert = parse_certificate(cf);
    if (!cert.yes) {
        std::cout << "reject: certificate carries no witness (s NO)\n";
        return kExitOk;
    }
    if (static_cast<int>(cert.map.cell.size()) - 1 != gf.graph.vertex_count()) {
        std::cout << "reject: certificate describes " << cert.map.cell.size() - 1
                  << " vertices, graph has " << gf.graph.vertex_count()
                  << (cert.reduced_form
                          ? " (reduced-form certificate: verify against the .reduced.gr graph)"
                          : "")
                  << "\n";
        return kExitOk;
    }
    auto res = verify_witness(gf.graph, cert.map, k);
    if (res.accepted)
        std::cout << "accept\n";
    else
        std::cout << "reject: " << res.reason << "\n";
    return kExitOk;
}

int cmd_oracle(const std::string& input, int k, const std::string& target, long long budget) {
    auto gf = parse_graph_file(input);
    OracleOptions oo;
    oo.budget = budget;
    if (target == "any")
        oo.target = GridTarget::any;
    else if (target == "min2")
        oo.target = GridTarget::min_two;
    else if (target == "path")
        oo.target = GridTarget::path;
    else
        throw parse_error("unknown oracle target '" + target + "'");
    auto verdict = brute_force_grid(gf.graph, k, oo);
    if (verdict.answer == Verdict::Answer::budget) {
        std::cerr << "budget exhausted after " << verdict.explored << " subsets\n";
        return kExitBudget;
    }
    std::cout << (verdict.answer == Verdict::Answer::yes ? "s YES" : "s NO") << "\n";
    return kExitOk;
}

int cmd_gen_grid(int rows, int cols, const std::string& output) {
    write_graph_file(
        output, build_grid(rows, cols),
        {"grid rows=" + std::to_string(rows) + " cols=" + std::to_string(cols), "k 0"});
    return kExitOk;
}

int cmd_gen_grid_split(int rows, int cols, int k, std::uint64_t seed, const std::string& output,
                       const std::string& cert_path) {
    auto inst = split_grid(rows, cols, k, seed);
    write_graph_file(output, inst.graph,
                     {"grid-split rows=" + std::to_string(rows) + " cols=" + std::to_string(cols) +
                          " seed=" + std::to_string(seed),
                      "k " + std::to_string(k)});
    if (!cert_path.empty()) {
        Certificate cert;
        cert.yes = true;
        cert.map = inst.planted;
        cert.cost = k;
        std::ofstream f(cert_path);
        if (!f) throw parse_error("cannot open " + cert_path + " for writing");
        write_certificate(f, cert, {"planted witness"});
    }
    return kExitOk;
}

int cmd_gen_random(int n, long long m, std::uint64_t seed, bool connected, int k_comment,
                   const std::string& output) {
    auto g = random_graph(n, m, seed, connected);
    std::vector<std::string> comments = {"random n=" + std::to_string(n) + " m=" +
                                         std::to_string(m) + " seed=" + std::to_string(seed)};
    if (k_comment >= 0) comments.push_back("k " + std::to_string(k_comment));
    write_graph_file(output, g, comments);
    return kExitOk;
}

int cmd_gen_sat_pipeline(const std::string& input, const std::string& prefix) {
    std::ifstream in(input);
    if (!in) throw parse_error("cannot open " + input);
    auto cnf = parse_cnf(in);
    auto nae = sat3_to_nae(cnf);
    {
        std::ofstream f(prefix + ".nae.cnf");
        f << "c NAE formula from " << fs::path(input).filename().string() << "\n";
        write_cnf(f, nae);
    }
    auto hyp = nae_to_hypergraph(nae);
    {
        std::ofstream f(prefix + ".hyp");
        write_hypergraph(f, hyp);
    }
    auto inst = hypergraph_to_c4_instance(hyp);
    write_graph_file(prefix + ".gr", inst.graph,
                     {std::string("hardness reduction") +
                          (inst.universal_edge_added ? " (universal edge added)" : ""),
                      "k " + std::to_string(inst.k)});
    std::cout << "n=" << inst.graph.vertex_count() << " m=" << inst.graph.edge_count()
              << " k=" << inst.k << "\n";
    return kExitOk;
}

struct BenchRow {
    std::string instance;
    std::string fields;  // rendered CSV tail
};

int cmd_bench(const std::string& dir, const std::string& output, int k_default,
              const std::string& mode_text, int jobs, long long timeout_ms, long long budget) {
    const std::string header =
        "instance,n,m,k,command,verdict,cost,wall_ms,table_entries,peak_candidates,outcome";
    std::map<std::string, std::string> done;
    std::vector<std::string> existing_order;
    if (fs::exists(output)) {
        std::ifstream in(output);
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (first) {
                first = false;
                if (line != header) throw parse_error("existing bench file has a different header");
                continue;
            }
            auto comma = line.find(',');
            if (comma == std::string::npos) continue;
            const std::string id = line.substr(0, comma);
            if (done.emplace(id, line).second) existing_order.push_back(id);
        }
    }

    std::vector<fs::path> inputs;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".gr")
            inputs.push_back(entry.path());
    std::sort(inputs.begin(), inputs.end());

    std::vector<fs::path> pending;
    for (const auto& p : inputs)
        if (!done.count(p.filename().string())) pending.push_back(p);

    std::vector<BenchRow> rows(pending.size());
    const int worker_threads = jobs > 1 ? 1 : 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, jobs)) if (jobs > 1)
#endif
    for (size_t i = 0; i < pending.size(); ++i) {
        const auto& path = pending[i];
        BenchRow row;
        row.instance = path.filename().string();
        std::ostringstream line;
        try {
            auto gf = parse_graph_file(path.string());
            const int k = gf.k_hint.value_or(k_default);
            if (k < 0) throw parse_error("no k for instance (use `c k <int>` or --k)");
            ModeSpec mode;
            if (mode_text != "oracle") mode = parse_mode(mode_text);
            par::set_threads(worker_threads);
            const auto t0 = std::chrono::steady_clock::now();
            std::string verdict, cost, outcome = "ok";
            SolveStats stats;
            try {
                if (mode_text == "oracle") {
                    OracleOptions oo;
                    oo.budget = budget;
                    auto v = brute_force_grid(gf.graph, k, oo);
                    if (v.answer == Verdict::Answer::budget)
                        outcome = "budget";
                    else
                        verdict = v.answer == Verdict::Answer::yes ? "YES" : "NO";
                    stats.table_indices = v.explored;
                } else {
                    GcOptions opts;
                    if (timeout_ms > 0) opts.time_limit = std::chrono::milliseconds(timeout_ms);
                    auto out = run_solver(gf.graph, k, mode, opts);
                    verdict = out.yes ? "YES" : "NO";
                    stats = out.stats;
                    if (out.yes) {
                        const int n = out.reduced_form ? out.reduced_graph->vertex_count()
                                                       : gf.graph.vertex_count();
                        cost = std::to_string(n - out.certificate->rows * out.certificate->cols);
                    }
                }
            } catch (const timeout_error&) {
                outcome = "timeout";
            } catch (const budget_error&) {
                outcome = "budget";
            }
            const double wall =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
            line << gf.graph.vertex_count() << "," << gf.graph.edge_count() << "," << k << ","
                 << mode_text << "," << verdict << "," << cost << "," << wall << ","
                 << stats.table_indices << "," << stats.peak_extender_batch << "," << outcome;
        } catch (const std::exception& e) {
            line << ",,," << mode_text << ",,,,,,error";
            std::cerr << row.instance << ": " << e.what() << "\n";
        }
        row.fields = line.str();
        rows[i] = std::move(row);
    }
    par::set_threads(0);

    std::ofstream out_file(output);
    out_file << header << "\n";
    for (const auto& id : existing_order) out_file << done[id] << "\n";
    for (const auto& row : rows) out_file << row.instance << "," << row.fields << "\n";
    std::cout << "bench: " << rows.size() << " new, " << existing_order.size() << " kept\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"grid contraction solver and toolbox"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "worker threads for parallel kernels (0 = auto)");

    std::string input, output, cert_path, mode_text = "grid", target = "any";
    int k = 0;
    long long budget = -1, timeout_ms = 0;
    bool oracle_check = false, branching_sep = false;

    auto* solve_cmd = app.add_subcommand("solve", "decide k-contractibility to a grid");
    solve_cmd->add_option("--input", input)->required();
    solve_cmd->add_option("-k,--k", k)->required();
    solve_cmd->add_option("--mode", mode_text,
                          "grid | path | bounded:R | annotated:R,Q,X1,X2,X3,X4");
    solve_cmd->add_option("--certificate", cert_path);
    solve_cmd->add_flag("--oracle-check", oracle_check);
    solve_cmd->add_flag("--branching-separator", branching_sep);
    solve_cmd->add_option("--budget", budget, "oracle subset budget");
    solve_cmd->add_option("--time-limit-ms", timeout_ms);

    auto* kern_cmd = app.add_subcommand("kernelize", "reduce to an O(k^4)-vertex kernel");
    kern_cmd->add_option("--input", input)->required();
    kern_cmd->add_option("-k,--k", k)->required();
    kern_cmd->add_option("--output", output);

    auto* verify_cmd = app.add_subcommand("verify", "check a witness certificate");
    verify_cmd->add_option("--input", input)->required();
    verify_cmd->add_option("--certificate", cert_path)->required();
    verify_cmd->add_option("-k,--k", k)->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive contraction search");
    oracle_cmd->add_option("--input", input)->required();
    oracle_cmd->add_option("-k,--k", k)->required();
    oracle_cmd->add_option("--target", target, "any | min2 | path");
    oracle_cmd->add_option("--budget", budget);

    auto* gen_cmd = app.add_subcommand("gen", "instance generators");
    gen_cmd->require_subcommand(1);
    int rows = 2, cols = 2, n = 0, k_comment = -1;
    long long m = 0;
    std::uint64_t seed = 0;
    bool connected = false;
    std::string prefix;

    auto* gen_grid = gen_cmd->add_subcommand("grid", "plain grid");
    gen_grid->add_option("--rows", rows)->required();
    gen_grid->add_option("--cols", cols)->required();
    gen_grid->add_option("--output", output)->required();

    auto* gen_split = gen_cmd->add_subcommand("grid-split", "planted YES instance");
    gen_split->add_option("--rows", rows)->required();
    gen_split->add_option("--cols", cols)->required();
    gen_split->add_option("-k,--k", k)->required();
    gen_split->add_option("--seed", seed)->required();
    gen_split->add_option("--output", output)->required();
    gen_split->add_option("--certificate", cert_path);

    auto* gen_random = gen_cmd->add_subcommand("random", "uniform random graph");
    gen_random->add_option("--n", n)->required();
    gen_random->add_option("--m", m)->required();
    gen_random->add_option("--seed", seed)->required();
    gen_random->add_flag("--connected", connected);
    gen_random->add_option("--k-comment", k_comment, "annotate the file with `c k <int>`");
    gen_random->add_option("--output", output)->required();

    auto* gen_sat = gen_cmd->add_subcommand(
        "sat-pipeline", "CNF -> NAE -> hypergraph -> C4-contraction instance");
    gen_sat->add_option("--input", input)->required();
    gen_sat->add_option("--output-prefix", prefix)->required();

    auto* bench_cmd = app.add_subcommand("bench", "run a directory of instances to CSV");
    std::string bench_dir;
    int jobs = 1, bench_k = -1;
    bench_cmd->add_option("--dir", bench_dir)->required();
    bench_cmd->add_option("--output", output)->required();
    bench_cmd->add_option("-k,--k", bench_k, "fallback when an instance has no `c k` comment");
    bench_cmd->add_option("--mode", mode_text, "grid | path | bounded:R | oracle");
    bench_cmd->add_option("--jobs", jobs);
    bench_cmd->add_option("--timeout-ms", timeout_ms);
    bench_cmd->add_option("--budget", budget);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitParse;
    }

    par::set_threads(threads);
    try {
        if (solve_cmd->parsed())
            return cmd_solve(input, k, mode_text, cert_path, oracle_check, budget, branching_sep,
                             timeout_ms);
        if (kern_cmd->parsed()) return cmd_kernelize(input, k, output);
        if (verify_cmd->parsed()) return cmd_verify(input, cert_path, k);
        if (oracle_cmd->parsed()) return cmd_oracle(input, k, target, budget);
        if (gen_cmd->parsed()) {
            if (gen_grid->parsed()) return cmd_gen_grid(rows, cols, output);
            if (gen_split->parsed())
                return cmd_gen_grid_split(rows, cols, k, seed, output, cert_path);
            if (gen_random->parsed())
                return cmd_gen_random(n, m, seed, connected, k_comment, output);
            if (gen_sat->parsed()) return cmd_gen_sat_pipeline(input, prefix);
        }
        if (bench_cmd->parsed())
            return cmd_bench(bench_dir, output, bench_k, mode_text, jobs, timeout_ms, budget);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const budget_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const timeout_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    }
    return kExitOk;
}
