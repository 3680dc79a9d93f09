#include "steiner/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "steiner/constants.hpp"
#include "steiner/rng.hpp"

namespace steiner {

using json = nlohmann::ordered_json;

namespace {

json rational_json(const Rat& value) {
    json j;
    j["fraction"] = to_fraction_string(value);
    j["decimal"] = to_decimal_string(value, 6);
    return j;
}

std::vector<int> mask_terminals(TerminalMask mask, const Catalog& catalog) {
    std::vector<int> out;
    for (int b = 0; b < catalog.terminal_count; ++b)
        if (mask & (TerminalMask{1} << b)) out.push_back(catalog.terminal_vertices[b] + 1);
    return out;
}

json certificate_json(const BridgeCertificate& cert, const Catalog& catalog) {
    json j;
    j["lhs"] = to_fraction_string(cert.lhs);
    j["tree_cost"] = to_fraction_string(cert.tree_cost);
    j["inequality_ok"] = cert.inequality_ok;
    j["polytope_member"] = cert.polytope.member();
    j["max_cycle_ok"] = cert.max_cycle_ok;
    json edges = json::array();
    for (std::size_t e = 0; e < cert.h.edges.size(); ++e) {
        json one;
        one["u"] = catalog.terminal_vertices[cert.h.edges[e].u] + 1;
        one["v"] = catalog.terminal_vertices[cert.h.edges[e].v] + 1;
        one["cost"] = to_fraction_string(cert.h.edges[e].cost);
        one["z"] = to_fraction_string(cert.z[e]);
        one["component"] = mask_terminals(catalog.components[cert.source_component[e]].mask, catalog);
        edges.push_back(std::move(one));
    }
    j["edges"] = std::move(edges);
    return j;
}

json trial_json(const TrialRun& trial, const Catalog& catalog, bool certify) {
    json j;
    j["seed"] = trial.seed;
    json iters = json::array();
    for (const IterationRecord& rec : trial.trace.iterations) {
        json it;
        if (rec.sampled_component >= 0)
            it["sampled"] = mask_terminals(catalog.components[rec.sampled_component].mask, catalog);
        else
            it["sampled"] = nullptr;
        it["cost_before"] = to_fraction_string(rec.tree_cost_before);
        it["cost_after"] = to_fraction_string(rec.tree_cost_after);
        it["drop"] = to_fraction_string(rec.drop_cost);
        it["lc"] = to_fraction_string(rec.lc_cost);
        it["exchange_ok"] = rec.exchange_ok;
        it["monotone_ok"] = rec.monotone_ok;
        if (certify && rec.certificate) it["certificate"] = certificate_json(*rec.certificate, catalog);
        iters.push_back(std::move(it));
    }
    j["iterations"] = std::move(iters);
    if (certify && trial.trace.final_certificate)
        j["final_certificate"] = certificate_json(*trial.trace.final_certificate, catalog);
    j["final_tree_cost"] = to_fraction_string(trial.trace.final_tree.cost());
    j["loss_total"] = to_fraction_string(trial.trace.loss_total);
    j["alg_cost"] = to_fraction_string(trial.trace.alg_cost);
    j["alg_edges"] = trial.trace.alg_edges;
    j["alg_connected"] = trial.trace.alg_connected;
    j["alg_decomposition_ok"] = trial.trace.alg_decomposition_ok;
    return j;
}

json catalog_json_impl(const Catalog& catalog) {
    json j;
    j["r"] = catalog.r;
    j["terminal_count"] = catalog.terminal_count;
    json comps = json::array();
    for (const FullComponent& fc : catalog.components) {
        json c;
        c["terminals"] = mask_terminals(fc.mask, catalog);
        c["cost"] = to_fraction_string(fc.cost);
        c["loss"] = to_fraction_string(fc.loss_cost);
        json tree = json::array();
        for (int id : fc.tree_edges) tree.push_back(id);
        c["tree_edges"] = std::move(tree);
        json loss = json::array();
        for (int id : fc.loss_edges) loss.push_back(id);
        c["loss_edges"] = std::move(loss);
        json lc = json::array();
        for (const LcEdge& e : fc.lc_edges) {
            json one;
            one["a"] = e.a;
            one["b"] = e.b;
            one["cost"] = to_fraction_string(e.cost);
            one["backing_edge"] = e.backing_edge;
            lc.push_back(std::move(one));
        }
        c["lc_edges"] = std::move(lc);
        comps.push_back(std::move(c));
    }
    j["components"] = std::move(comps);
    json discarded = json::array();
    for (const DiscardedSet& d : catalog.discarded) {
        json one;
        one["terminals"] = mask_terminals(d.mask, catalog);
        one["reason"] = d.reason;
        if (d.has_cost) one["tree_cost"] = to_fraction_string(d.tree_cost);
        discarded.push_back(std::move(one));
    }
    j["discarded"] = std::move(discarded);
    return j;
}

std::string failures_summary(const std::vector<Verdict>& verdicts) {
    std::string out;
    for (const Verdict& v : verdicts) {
        if (!v.failed()) continue;
        if (!out.empty()) out += "+";
        out += v.name;
    }
    return out.empty() ? "pass" : "fail:" + out;
}

}  // namespace

bool RunReport::all_pass() const {
    return std::none_of(verdicts.begin(), verdicts.end(),
                        [](const Verdict& v) { return v.failed(); });
}

RunReport run_experiment(const InstanceFile& instance, const ExperimentConfig& config) {
    RunReport report;
    report.instance = instance;
    report.config = config;

    const Graph g = to_graph(instance);
    const std::vector<int> terminals = g.terminals();
    if (terminals.size() < 2)
        throw Error("run_experiment: need at least two terminals, got " +
                    std::to_string(terminals.size()));

    report.quasi_bipartite = check_quasi_bipartite(g);

    std::vector<int> all(g.n);
    for (int v = 0; v < g.n; ++v) all[v] = v;
    const MetricClosure full_closure = metric_closure(g, all);
    const MetricClosure terminal_closure = metric_closure(g, terminals);

    const int k = static_cast<int>(terminals.size());
    // r is an upper bound on component size; cap it at |R| so one batch
    // config works across instances of different terminal counts
    report.effective_r = config.r == 0 ? std::min(k, 5) : std::min(config.r, k);
    report.catalog = enumerate_catalog(full_closure.graph, report.effective_r, config.threads);

    const HypergraphicLp lp = build_lp(report.catalog, config.lp_cap);
    report.lp = solve_lp(lp, report.catalog, config.threads);

    report.terminal_mst_cost = mst(terminal_closure.graph).total_cost;

    if (config.compute_opt && k <= config.opt_cap) {
        report.exact = exact_steiner(g, full_closure, config.opt_cap);
        report.gap_value = gap(*report.exact, report.lp);
    }

    report.rlc_config = choose_m_and_t(report.lp, config.mode, config.seed);
    report.rlc_config.certify = config.certify;

    RlcContext ctx;
    ctx.host = &g;
    ctx.full_closure = &full_closure;
    ctx.terminal_closure = &terminal_closure;
    ctx.catalog = &report.catalog;

    report.trials.resize(config.trials);
    const int nt = config.threads > 1 ? config.threads : 1;
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
    for (long j = 0; j < config.trials; ++j) {
        RlcConfig trial_config = report.rlc_config;
        trial_config.seed = derive_seed(config.seed, static_cast<std::uint64_t>(j));
        report.trials[j].seed = trial_config.seed;
        report.trials[j].trace = rlc_round(ctx, report.lp, trial_config, 1);
    }
    (void)nt;

    if (config.trials > 0) {
        Rat total = 0;
        for (const TrialRun& t : report.trials) total += t.trace.alg_cost;
        report.mean_alg = total / config.trials;
    }

    report.bound_factor =
        config.mode == Mode::General ? gap_ratio_bounds().lo : alpha_bounds().lo;

    // ---- verdicts ----
    auto add = [&](Verdict v) { report.verdicts.push_back(std::move(v)); };

    {
        Verdict v{"terminal_mst_vs_lp", true, true, ""};
        v.pass = cmp(report.terminal_mst_cost, 2 * report.lp.lp_star) <= 0;
        v.detail = "mst(G[R])=" + to_fraction_string(report.terminal_mst_cost) +
                   " vs 2*lp*=" + to_fraction_string(2 * report.lp.lp_star);
        add(std::move(v));
    }
    {
        Verdict v{"component_loss_half", true, true, ""};
        for (const FullComponent& fc : report.catalog.components) {
            if (cmp(2 * fc.loss_cost, fc.cost) > 0) {
                v.pass = false;
                v.detail = "component on terminals " +
                           json(mask_terminals(fc.mask, report.catalog)).dump() +
                           " has loss=" + to_fraction_string(fc.loss_cost) +
                           " > cost/2 with cost=" + to_fraction_string(fc.cost);
                break;
            }
        }
        if (v.pass)
            v.detail = std::to_string(report.catalog.components.size()) + " components checked";
        add(std::move(v));
    }

    long iteration_count = 0;
    bool bridge_ineq = true, bridge_poly = true, bridge_cycle = true;
    bool exchange = true, monotone = true, connected = true, decomposition = true;
    std::string bridge_detail;
    for (const TrialRun& t : report.trials) {
        std::vector<const BridgeCertificate*> certs;
        for (const IterationRecord& rec : t.trace.iterations) {
            ++iteration_count;
            if (!rec.exchange_ok) exchange = false;
            if (!rec.monotone_ok) monotone = false;
            if (rec.certificate) certs.push_back(&*rec.certificate);
        }
        if (t.trace.final_certificate) certs.push_back(&*t.trace.final_certificate);
        for (const BridgeCertificate* c : certs) {
            if (!c->inequality_ok) {
                bridge_ineq = false;
                bridge_detail = "lhs=" + to_fraction_string(c->lhs) +
                                " < c(T)=" + to_fraction_string(c->tree_cost);
            }
            if (!c->polytope.member()) bridge_poly = false;
            if (!c->max_cycle_ok) bridge_cycle = false;
        }
        if (!t.trace.alg_connected) connected = false;
        if (!t.trace.alg_decomposition_ok) decomposition = false;
    }
    const bool have_certs = config.certify && config.trials > 0;
    add(Verdict{"bridge_inequality", have_certs, bridge_ineq,
                bridge_ineq ? std::to_string(iteration_count) + " iterations certified"
                            : bridge_detail});
    add(Verdict{"bridge_polytope", have_certs, bridge_poly,
                bridge_poly ? "all certificate points inside the spanning-tree polytope"
                            : "a certificate point left the spanning-tree polytope"});
    add(Verdict{"bridge_max_cycle", have_certs, bridge_cycle,
                bridge_cycle ? "every certificate edge is max-cost on its tree cycle"
                             : "a certificate edge is not max-cost on its tree cycle"});
    add(Verdict{"lc_exchange", config.trials > 0, exchange,
                exchange ? "c(T') <= c(T) - drop + lc on every iteration"
                         : "an iteration violated c(T') <= c(T) - drop + lc"});
    add(Verdict{"tree_cost_monotone", config.trials > 0, monotone,
                monotone ? "tree cost never increased" : "tree cost increased in an iteration"});
    add(Verdict{"alg_connected", config.trials > 0, connected,
                connected ? "every output tree spans the terminals"
                          : "an output tree missed a terminal"});
    add(Verdict{"alg_cost_decomposition", config.trials > 0, decomposition,
                decomposition ? "c(ALG) <= c(T_final) + sum of sampled losses on every trial"
                              : "a trial violated c(ALG) <= c(T_final) + sum of sampled losses"});

    {
        Verdict v{"lp_below_opt", report.exact.has_value() && report.effective_r == k, true, ""};
        if (v.applicable) {
            v.pass = cmp(report.lp.lp_star, report.exact->cost) <= 0;
            v.detail = "lp*=" + to_fraction_string(report.lp.lp_star) +
                       " vs opt=" + to_fraction_string(report.exact->cost);
        } else {
            v.detail = report.exact ? "catalog is r-restricted; lp* may exceed opt" : "opt not computed";
        }
        add(std::move(v));
    }
    {
        Verdict v{"opt_below_alg", report.exact.has_value() && config.trials > 0, true, ""};
        if (v.applicable) {
            for (const TrialRun& t : report.trials)
                if (cmp(report.exact->cost, t.trace.alg_cost) > 0) {
                    v.pass = false;
                    v.detail = "trial produced alg=" + to_fraction_string(t.trace.alg_cost) +
                               " below opt=" + to_fraction_string(report.exact->cost);
                    break;
                }
            if (v.pass) v.detail = "opt <= c(ALG) on every trial";
        }
        add(std::move(v));
    }
    {
        Verdict v{"gap_bound", report.gap_value.has_value(), true, ""};
        if (v.applicable) {
            v.pass = cmp(*report.gap_value, gap_ratio_bounds().lo) <= 0;
            v.detail = "gap=" + to_fraction_string(*report.gap_value) + " (~" +
                       to_decimal_string(*report.gap_value, 6) + ") vs bound ~" +
                       to_decimal_string(gap_ratio_bounds().lo, 6);
        }
        add(std::move(v));
    }
    {
        Verdict v{"mean_alg_bound", config.trials > 0, true, ""};
        if (v.applicable) {
            const Rat bound = report.bound_factor * report.lp.lp_star * Rat(103, 100);
            v.pass = cmp(*report.mean_alg, bound) <= 0;
            v.detail = "mean(ALG)=" + to_fraction_string(*report.mean_alg) + " (~" +
                       to_decimal_string(*report.mean_alg, 6) + ") vs bound*(1.03)=" +
                       to_decimal_string(bound, 6);
        }
        add(std::move(v));
    }
    if (config.mode == Mode::QuasiBipartite) {
        {
            Verdict v{"qb_no_steiner_steiner_edges", true, report.quasi_bipartite,
                      report.quasi_bipartite ? "no Steiner-Steiner edge present"
                                             : "instance has a Steiner-Steiner edge"};
            add(std::move(v));
        }
        {
            Verdict v{"qb_refined_mst_bound", true, true, ""};
            const Rat rhs = 2 * (report.lp.lp_star - report.lp.loss_star);
            v.pass = cmp(report.terminal_mst_cost, rhs) <= 0;
            v.detail = "mst(G[R])=" + to_fraction_string(report.terminal_mst_cost) +
                       " vs 2*(lp*-loss*)=" + to_fraction_string(rhs);
            add(std::move(v));
        }
    }
    if (instance.known_opt && report.exact) {
        Verdict v{"known_opt_consistent", true, true, ""};
        v.pass = cmp(*instance.known_opt, report.exact->cost) == 0;
        v.detail = "annotated opt=" + to_fraction_string(*instance.known_opt) +
                   " vs computed opt=" + to_fraction_string(report.exact->cost);
        add(std::move(v));
    }

    return report;
}

std::string report_to_json(const RunReport& report) {
    json j;
    j["schema"] = "steiner-rlc-report/1";

    json inst;
    inst["name"] = report.instance.name;
    inst["vertices"] = report.instance.vertices;
    inst["edges"] = report.instance.edges.size();
    json terms = json::array();
    for (int t : report.instance.terminals) terms.push_back(t + 1);
    inst["terminals"] = std::move(terms);
    inst["quasi_bipartite"] = report.quasi_bipartite;
    if (report.instance.known_opt)
        inst["known_opt"] = to_fraction_string(*report.instance.known_opt);
    j["instance"] = std::move(inst);

    json cfg;
    cfg["r"] = report.effective_r;
    cfg["trials"] = report.config.trials;
    cfg["seed"] = report.config.seed;
    cfg["mode"] = report.config.mode == Mode::General ? "general" : "quasi-bipartite";
    cfg["certify"] = report.config.certify;
    j["config"] = std::move(cfg);

    j["catalog"] = catalog_json_impl(report.catalog);

    json lpj;
    lpj["lp_star"] = rational_json(report.lp.lp_star);
    lpj["loss_star"] = rational_json(report.lp.loss_star);
    lpj["mass"] = rational_json(report.lp.mass);
    lpj["inequality_rows"] = (1u << report.catalog.terminal_count) - 1;
    json support = json::array();
    for (std::size_t c = 0; c < report.lp.x.size(); ++c) {
        if (report.lp.x[c] == 0) continue;
        json one;
        one["terminals"] = mask_terminals(report.catalog.components[c].mask, report.catalog);
        one["weight"] = to_fraction_string(report.lp.x[c]);
        support.push_back(std::move(one));
    }
    lpj["support"] = std::move(support);
    j["lp"] = std::move(lpj);

    j["terminal_mst_cost"] = rational_json(report.terminal_mst_cost);

    if (report.exact) {
        json ex;
        ex["opt"] = rational_json(report.exact->cost);
        ex["tree_edges"] = report.exact->tree_edges;
        ex["dp_updates"] = report.exact->dp_updates;
        j["exact"] = std::move(ex);
        json gap_j;
        gap_j["value"] = rational_json(*report.gap_value);
        gap_j["bound"] = to_decimal_string(gap_ratio_bounds().lo, 50);
        j["gap"] = std::move(gap_j);
    }

    json rlc;
    rlc["iterations"] = report.rlc_config.iterations;
    rlc["normalizer"] = to_fraction_string(report.rlc_config.normalizer);
    rlc["normalizer_decimal"] = to_decimal_string(report.rlc_config.normalizer, 50);
    rlc["rate_lower_bound"] = to_decimal_string(report.rlc_config.rate_lower, 50);
    rlc["mass"] = to_fraction_string(report.rlc_config.mass);
    rlc["bound_factor"] = to_decimal_string(report.bound_factor, 50);
    j["rlc"] = std::move(rlc);

    json trials = json::array();
    for (const TrialRun& t : report.trials)
        trials.push_back(trial_json(t, report.catalog, report.config.certify));
    j["trials"] = std::move(trials);

    json summary;
    summary["trial_count"] = report.trials.size();
    if (report.mean_alg) summary["mean_alg"] = rational_json(*report.mean_alg);
    summary["bound_times_lp"] = rational_json(report.bound_factor * report.lp.lp_star);
    j["summary"] = std::move(summary);

    json verdicts = json::array();
    for (const Verdict& v : report.verdicts) {
        json one;
        one["name"] = v.name;
        one["applicable"] = v.applicable;
        one["pass"] = v.pass;
        one["detail"] = v.detail;
        verdicts.push_back(std::move(one));
    }
    j["verdicts"] = std::move(verdicts);
    j["all_pass"] = report.all_pass();
    return j.dump(2) + "\n";
}

std::string csv_header() {
    return "instance,vertices,terminals,r,lp_star,opt,gap,mean_alg,bound,verdicts\n";
}

std::string report_csv_row(const RunReport& report) {
    std::ostringstream out;
    out << report.instance.name << "," << report.instance.vertices << ","
        << report.instance.terminals.size() << "," << report.effective_r << ","
        << to_fraction_string(report.lp.lp_star) << ",";
    if (report.exact) out << to_fraction_string(report.exact->cost);
    out << ",";
    if (report.gap_value) out << to_fraction_string(*report.gap_value);
    out << ",";
    if (report.mean_alg) out << to_fraction_string(*report.mean_alg);
    out << "," << to_decimal_string(report.bound_factor * report.lp.lp_star, 6) << ","
        << failures_summary(report.verdicts) << "\n";
    return out.str();
}

std::string catalog_to_json(const Catalog& catalog) { return catalog_json_impl(catalog).dump(2) + "\n"; }

std::string lp_to_json(const HypergraphicLp& lp) {
    json j;
    j["terminal_count"] = lp.terminal_count;
    json comps = json::array();
    for (std::size_t c = 0; c < lp.component_masks.size(); ++c) {
        json one;
        one["mask"] = lp.component_masks[c];
        one["cost"] = to_fraction_string(lp.component_costs[c]);
        comps.push_back(std::move(one));
    }
    j["components"] = std::move(comps);
    json rows = json::array();
    for (const LpRow& row : lp.rows) {
        json one;
        one["subset_mask"] = row.subset;
        one["rhs"] = row.rhs;
        json coeffs = json::object();
        for (std::size_t c = 0; c < lp.component_masks.size(); ++c) {
            const int coeff = row_coefficient(lp.component_masks[c], row.subset);
            if (coeff > 0) coeffs[std::to_string(c)] = coeff;
        }
        one["coeffs"] = std::move(coeffs);
        rows.push_back(std::move(one));
    }
    j["rows"] = std::move(rows);
    json eq;
    eq["rhs"] = lp.equality_rhs();
    json eq_coeffs = json::object();
    for (std::size_t c = 0; c < lp.component_masks.size(); ++c)
        eq_coeffs[std::to_string(c)] = __builtin_popcount(lp.component_masks[c]) - 1;
    eq["coeffs"] = std::move(eq_coeffs);
    j["equality"] = std::move(eq);
    return j.dump(2) + "\n";
}

std::string lp_solution_to_json(const LpSolution& solution, const Catalog& catalog) {
    json j;
    j["lp_star"] = rational_json(solution.lp_star);
    j["loss_star"] = rational_json(solution.loss_star);
    j["mass"] = rational_json(solution.mass);
    json x = json::array();
    for (std::size_t c = 0; c < solution.x.size(); ++c) {
        if (solution.x[c] == 0) continue;
        json one;
        one["component"] = c;
        one["terminals"] = mask_terminals(catalog.components[c].mask, catalog);
        one["weight"] = to_fraction_string(solution.x[c]);
        x.push_back(std::move(one));
    }
    j["support"] = std::move(x);
    return j.dump(2) + "\n";
}

BatchResult run_batch(const std::filesystem::path& input_dir,
                      const std::filesystem::path& out_dir, const ExperimentConfig& config) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(input_dir))
        throw Error("run_batch: " + input_dir.string() + " is not a directory");
    fs::create_directories(out_dir);

    std::vector<fs::path> inputs;
    for (const auto& entry : fs::directory_iterator(input_dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = entry.path().extension().string();
        if (ext == ".stp" || ext == ".json") inputs.push_back(entry.path());
    }
    std::sort(inputs.begin(), inputs.end());

    BatchResult result;
    std::ostringstream csv;
    csv << csv_header();
    for (const fs::path& path : inputs) {
        const InstanceFile instance = parse_instance(path);
        const RunReport report = run_experiment(instance, config);
        const fs::path out_file = out_dir / (path.filename().string() + ".report.json");
        std::ofstream out(out_file, std::ios::binary);
        if (!out) throw Error("run_batch: cannot write " + out_file.string());
        out << report_to_json(report);
        result.report_files.push_back(out_file);
        csv << report_csv_row(report);
        if (!report.all_pass()) result.all_pass = false;
    }
    result.summary_csv = out_dir / "summary.csv";
    std::ofstream out(result.summary_csv, std::ios::binary);
    if (!out) throw Error("run_batch: cannot write " + result.summary_csv.string());
    out << csv.str();
    return result;
}

}  // namespace steiner
