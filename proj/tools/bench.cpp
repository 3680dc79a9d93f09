// Wall-clock comparison of the OpenMP kernels against their serial
// references, with a result-equality check per kernel.

#include <chrono>
#include <cstdio>
#include <string>

#include "steiner/instance.hpp"
#include "steiner/lp.hpp"
#include "steiner/report.hpp"
#include "steiner/rng.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

using namespace steiner;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void row(const char* kernel, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-28s %10.1f %10.1f %8.2fx   %s\n", kernel, serial_ms, parallel_ms,
                parallel_ms > 0 ? serial_ms / parallel_ms : 0.0, equal ? "results equal" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    int threads = 2;
#if defined(_OPENMP)
    threads = omp_get_max_threads();
#endif
    if (argc > 1) threads = std::stoi(argv[1]);
    std::printf("threads for the parallel side: %d\n\n", threads);
    std::printf("%-28s %10s %10s %9s\n", "kernel", "serial/ms", "par/ms", "speedup");

    // catalog enumeration over terminal subsets
    {
        const GenParams params{15, 10, GenModel::RandomMetric, 99, "bench-catalog"};
        const Graph g = to_graph(generate_random(params));
        std::vector<int> all(g.n);
        for (int v = 0; v < g.n; ++v) all[v] = v;
        const MetricClosure full = metric_closure(g, all);
        const auto t0 = Clock::now();
        const Catalog serial = enumerate_catalog_serial(full.graph, 5);
        const double serial_ms = ms_since(t0);
        const auto t1 = Clock::now();
        const Catalog parallel = enumerate_catalog(full.graph, 5, threads);
        const double parallel_ms = ms_since(t1);
        bool equal = serial.components.size() == parallel.components.size();
        for (std::size_t i = 0; equal && i < serial.components.size(); ++i)
            equal = serial.components[i].mask == parallel.components[i].mask &&
                    serial.components[i].cost == parallel.components[i].cost &&
                    serial.components[i].loss_cost == parallel.components[i].loss_cost;
        row("catalog enumeration", serial_ms, parallel_ms, equal);
    }

    // subset-row violation scan on a dense infeasible point
    {
        const GenParams params{16, 14, GenModel::Euclidean, 7, "bench-scan"};
        const Graph g = to_graph(generate_random(params));
        std::vector<int> all(g.n);
        for (int v = 0; v < g.n; ++v) all[v] = v;
        const MetricClosure full = metric_closure(g, all);
        const Catalog catalog = enumerate_catalog(full.graph, 4, threads);
        const HypergraphicLp lp = build_lp(catalog);
        std::vector<Rat> x(catalog.components.size(), Rat(1, 3));
        const auto t0 = Clock::now();
        const auto serial = scan_violated_rows_serial(lp, x);
        const double serial_ms = ms_since(t0);
        const auto t1 = Clock::now();
        const auto parallel = scan_violated_rows(lp, x, threads);
        const double parallel_ms = ms_since(t1);
        row("LP row violation scan", serial_ms, parallel_ms, serial == parallel);
    }

    // spanning-tree polytope subset check
    {
        SplitMix64 rng(5);
        SpanningTreePolytopePoint point;
        point.h.n = 16;
        for (int e = 0; e < 120; ++e) {
            const int u = static_cast<int>(rng.next_below(16));
            int v = static_cast<int>(rng.next_below(16));
            if (u == v) v = (v + 1) % 16;
            point.h.edges.push_back(Edge{std::min(u, v), std::max(u, v), Rat(1)});
            point.z.push_back(Rat(static_cast<long>(rng.next_below(4)), 9));
        }
        const auto t0 = Clock::now();
        const PolytopeVerdict serial = check_spanning_tree_polytope_serial(point);
        const double serial_ms = ms_since(t0);
        const auto t1 = Clock::now();
        const PolytopeVerdict parallel = check_spanning_tree_polytope(point, threads);
        const double parallel_ms = ms_since(t1);
        const bool equal = serial.member() == parallel.member() &&
                           serial.violations.size() == parallel.violations.size();
        row("polytope subset check", serial_ms, parallel_ms, equal);
    }

    // independent rounding trials inside one experiment
    {
        const GenParams params{12, 6, GenModel::QuasiBipartite, 31, "bench-trials"};
        const InstanceFile inst = generate_random(params);
        ExperimentConfig cfg;
        cfg.r = 4;
        cfg.trials = 60;
        cfg.seed = 4;
        cfg.threads = 1;
        const auto t0 = Clock::now();
        const RunReport serial = run_experiment(inst, cfg);
        const double serial_ms = ms_since(t0);
        cfg.threads = threads;
        const auto t1 = Clock::now();
        const RunReport parallel = run_experiment(inst, cfg);
        const double parallel_ms = ms_since(t1);
        row("rounding trials", serial_ms, parallel_ms,
            report_to_json(serial) == report_to_json(parallel));
    }

    return 0;
}
