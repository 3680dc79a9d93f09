// Command-line front end: solve-lp, rlc, exact, verify, gen, batch.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "steiner/constants.hpp"
#include "steiner/report.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

using namespace steiner;
namespace fs = std::filesystem;

namespace {

int default_threads() {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void write_or_print(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("cannot write " + out_path);
    out << content;
}

void print_verdicts(const RunReport& report) {
    for (const Verdict& v : report.verdicts) {
        const char* mark = !v.applicable ? " n/a" : (v.pass ? "pass" : "FAIL");
        std::printf("  [%s] %-28s %s\n", mark, v.name.c_str(), v.detail.c_str());
    }
}

void print_headline(const RunReport& report) {
    std::printf("instance %s: |V|=%d |R|=%zu r=%d\n", report.instance.name.c_str(),
                report.instance.vertices, report.instance.terminals.size(), report.effective_r);
    std::printf("  lp* = %s (~%s), loss* = %s, mass = %s\n",
                to_fraction_string(report.lp.lp_star).c_str(),
                to_decimal_string(report.lp.lp_star, 6).c_str(),
                to_fraction_string(report.lp.loss_star).c_str(),
                to_fraction_string(report.lp.mass).c_str());
    std::printf("  mst(G[R]) = %s\n", to_fraction_string(report.terminal_mst_cost).c_str());
    if (report.exact)
        std::printf("  opt = %s, gap = %s (~%s)\n", to_fraction_string(report.exact->cost).c_str(),
                    to_fraction_string(*report.gap_value).c_str(),
                    to_decimal_string(*report.gap_value, 6).c_str());
    if (report.mean_alg)
        std::printf("  mean alg over %zu trials = %s (~%s), bound factor ~%s\n",
                    report.trials.size(), to_fraction_string(*report.mean_alg).c_str(),
                    to_decimal_string(*report.mean_alg, 6).c_str(),
                    to_decimal_string(report.bound_factor, 6).c_str());
}

struct CommonOptions {
    std::string instance;
    int r = 0;
    long trials = 100;
    std::uint64_t seed = 1;
    std::string mode = "general";
    std::string out;
    int threads = default_threads();
    bool no_certify = false;
};

void attach_common(CLI::App* cmd, CommonOptions& opts, const char* instance_help) {
    cmd->add_option("--instance", opts.instance, instance_help)->required();
    cmd->add_option("--r", opts.r,
                    "catalog restriction (terminal sets up to this size; 0 = min(|R|,5))");
    cmd->add_option("--trials", opts.trials, "number of seeded rounding trials");
    cmd->add_option("--seed", opts.seed, "root seed; trial seeds derive from it");
    cmd->add_option("--mode", opts.mode, "general | quasi-bipartite")
        ->check(CLI::IsMember({"general", "quasi-bipartite"}));
    cmd->add_option("--out", opts.out, "output file (stdout when omitted)");
    cmd->add_option("--threads", opts.threads, "worker threads for the parallel kernels");
    cmd->add_flag("--no-certify", opts.no_certify, "skip per-iteration bridge certificates");
}

ExperimentConfig to_config(const CommonOptions& opts, bool compute_opt) {
    ExperimentConfig cfg;
    cfg.r = opts.r;
    cfg.trials = opts.trials;
    cfg.seed = opts.seed;
    cfg.mode = opts.mode == "general" ? Mode::General : Mode::QuasiBipartite;
    cfg.compute_opt = compute_opt;
    cfg.threads = opts.threads;
    cfg.certify = !opts.no_certify;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypergraphic-LP rounding for Steiner trees, with exact certification"};
    app.require_subcommand(1);

    CommonOptions solve_opts, rlc_opts, exact_opts, verify_opts, batch_opts;
    std::string batch_out;

    CLI::App* solve_cmd = app.add_subcommand("solve-lp", "enumerate the catalog and solve the LP");
    attach_common(solve_cmd, solve_opts, "instance file (.stp or .json)");
    bool dump_lp = false;
    solve_cmd->add_flag("--dump-lp", dump_lp, "also emit the full constraint matrix");

    CLI::App* rlc_cmd = app.add_subcommand("rlc", "run randomized loss-contracting trials");
    attach_common(rlc_cmd, rlc_opts, "instance file (.stp or .json)");

    CLI::App* exact_cmd = app.add_subcommand("exact", "exact optimum by terminal-subset DP");
    attach_common(exact_cmd, exact_opts, "instance file (.stp or .json)");

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "full certification run (catalog, LP, opt, trials, verdicts)");
    attach_common(verify_cmd, verify_opts, "instance file (.stp or .json)");

    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a random instance");
    GenParams gen_params;
    std::string gen_model = "euclidean", gen_out;
    gen_cmd->add_option("--vertices", gen_params.vertices, "vertex count")->required();
    gen_cmd->add_option("--terminals", gen_params.terminals, "terminal count")->required();
    gen_cmd->add_option("--model", gen_model, "euclidean | random-metric | quasi-bipartite")
        ->check(CLI::IsMember({"euclidean", "random-metric", "quasi-bipartite"}));
    gen_cmd->add_option("--seed", gen_params.seed, "generator seed");
    gen_cmd->add_option("--name", gen_params.name, "instance name");
    gen_cmd->add_option("--out", gen_out, "output file; .json picks the JSON format");

    CLI::App* batch_cmd = app.add_subcommand("batch", "run every instance in a directory");
    attach_common(batch_cmd, batch_opts, "directory of .stp/.json instances");
    batch_cmd->add_option("--out-dir", batch_out, "directory for reports and summary.csv")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve_cmd) {
            const InstanceFile inst = parse_instance(solve_opts.instance);
            const Graph g = to_graph(inst);
            std::vector<int> all(g.n);
            for (int v = 0; v < g.n; ++v) all[v] = v;
            const MetricClosure full = metric_closure(g, all);
            const int k = g.terminal_count();
            const int r = solve_opts.r == 0 ? std::min(k, 5) : solve_opts.r;
            const Catalog catalog = enumerate_catalog(full.graph, r, solve_opts.threads);
            const HypergraphicLp lp = build_lp(catalog);
            const LpSolution sol = solve_lp(lp, catalog, solve_opts.threads);
            std::printf("catalog: %zu components, %zu discarded (r=%d)\n",
                        catalog.components.size(), catalog.discarded.size(), r);
            std::printf("lp* = %s (~%s), loss* = %s, mass = %s\n",
                        to_fraction_string(sol.lp_star).c_str(),
                        to_decimal_string(sol.lp_star, 6).c_str(),
                        to_fraction_string(sol.loss_star).c_str(),
                        to_fraction_string(sol.mass).c_str());
            if (!solve_opts.out.empty()) {
                std::string body = "{\n\"catalog\": " + catalog_to_json(catalog) +
                                   ",\n\"solution\": " + lp_solution_to_json(sol, catalog);
                if (dump_lp) body += ",\n\"lp\": " + lp_to_json(lp);
                body += "}\n";
                write_or_print(body, solve_opts.out);
            }
            return 0;
        }
        if (*exact_cmd) {
            const InstanceFile inst = parse_instance(exact_opts.instance);
            const Graph g = to_graph(inst);
            const ExactResult r = exact_steiner(g);
            std::printf("opt = %s (~%s), %zu tree edges, %llu dp updates\n",
                        to_fraction_string(r.cost).c_str(), to_decimal_string(r.cost, 6).c_str(),
                        r.tree_edges.size(), static_cast<unsigned long long>(r.dp_updates));
            if (!exact_opts.out.empty()) {
                std::ostringstream body;
                body << "{\n  \"opt\": \"" << to_fraction_string(r.cost)
                     << "\",\n  \"tree_edges\": [";
                for (std::size_t i = 0; i < r.tree_edges.size(); ++i)
                    body << (i ? ", " : "") << r.tree_edges[i];
                body << "]\n}\n";
                write_or_print(body.str(), exact_opts.out);
            }
            return 0;
        }
        if (*rlc_cmd || *verify_cmd) {
            const bool verify = verify_cmd->parsed();
            const CommonOptions& opts = verify ? verify_opts : rlc_opts;
            const InstanceFile inst = parse_instance(opts.instance);
            const RunReport report = run_experiment(inst, to_config(opts, verify));
            print_headline(report);
            print_verdicts(report);
            if (!opts.out.empty()) write_or_print(report_to_json(report), opts.out);
            return report.all_pass() ? 0 : 1;
        }
        if (*gen_cmd) {
            gen_params.model = gen_model == "euclidean"       ? GenModel::Euclidean
                               : gen_model == "random-metric" ? GenModel::RandomMetric
                                                              : GenModel::QuasiBipartite;
            const InstanceFile inst = generate_random(gen_params);
            const bool json = fs::path(gen_out).extension() == ".json";
            write_or_print(json ? instance_to_json(inst) : to_stp(inst), gen_out);
            if (!gen_out.empty())
                std::printf("wrote %s (%d vertices, %zu edges, %zu terminals)\n", gen_out.c_str(),
                            inst.vertices, inst.edges.size(), inst.terminals.size());
            return 0;
        }
        if (*batch_cmd) {
            const BatchResult result =
                run_batch(batch_opts.instance, batch_out, to_config(batch_opts, true));
            std::printf("%zu instances processed, summary at %s\n", result.report_files.size(),
                        result.summary_csv.string().c_str());
            std::printf("verdicts: %s\n", result.all_pass ? "all pass" : "FAILURES present");
            return result.all_pass ? 0 : 1;
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 2;
    }
    return 0;
}
