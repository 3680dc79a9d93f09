#include "steiner/rlc.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "steiner/constants.hpp"

namespace steiner {

bool RlcTrace::all_ok() const {
    for (const IterationRecord& it : iterations) {
        if (!it.exchange_ok || !it.monotone_ok) return false;
        if (it.certificate && !it.certificate->ok()) return false;
    }
    if (final_certificate && !final_certificate->ok()) return false;
    return alg_connected && alg_decomposition_ok;
}

RlcConfig choose_m_and_t(const LpSolution& x, Mode mode, std::uint64_t seed) {
    RlcConfig config;
    config.mode = mode;
    config.seed = seed;
    config.mass = x.mass;
    const RationalBounds& rate = mode == Mode::General ? ln3_bounds() : alpha_bounds();
    config.rate_lower = rate.lo;
    if (x.mass == 0) {
        // nothing to sample; the initial terminal tree is the answer
        config.iterations = 0;
        config.normalizer = 0;
        config.inv_normalizer = 0;
        return config;
    }
    config.iterations = ceil_to_long(x.mass * rate.hi);
    config.normalizer = Rat(config.iterations) / rate.lo;
    config.inv_normalizer = rate.lo / config.iterations;
    if (config.normalizer < x.mass)
        throw Error("choose_m_and_t: normalizer fell below the LP mass");
    return config;
}

int sample_component(const std::vector<Rat>& x, const Rat& inv_normalizer, SplitMix64& rng) {
    const Rat u = rng.next_unit_rational();
    Rat cumulative = 0;
    for (std::size_t c = 0; c < x.size(); ++c) {
        if (x[c] == 0) continue;
        cumulative += x[c] * inv_normalizer;
        if (cmp(u, cumulative) < 0) return static_cast<int>(c);
    }
    return -1;
}

bool check_quasi_bipartite(const Graph& g) {
    for (const Edge& e : g.edges)
        if (!g.is_terminal(e.u) && !g.is_terminal(e.v)) return false;
    return true;
}

namespace {

TerminalTree tree_from_mst(const MetricClosure& terminal_closure) {
    const EdgeSet picked = mst(terminal_closure.graph);
    TerminalTree tree;
    tree.terminal_count = terminal_closure.graph.n;
    for (int id : picked.ids) {
        const Edge& e = terminal_closure.graph.edges[id];
        TreeEdge te;
        te.u = e.u;
        te.v = e.v;
        te.cost = e.cost;
        te.origin = TreeEdge::Origin::Metric;
        te.backing_edge = id;
        tree.edges.push_back(te);
    }
    return tree;
}

// MST over the tree's edges plus the loss-contracted edges of a sampled
// component; ties break by (cost, position), old edges first.
TerminalTree splice_and_restore(const TerminalTree& tree, const FullComponent* fc, int comp_index) {
    std::vector<TreeEdge> pool = tree.edges;
    if (fc) {
        for (const LcEdge& lc : fc->lc_edges) {
            TreeEdge te;
            te.u = lc.a;
            te.v = lc.b;
            te.cost = lc.cost;
            te.origin = TreeEdge::Origin::LossContracted;
            te.backing_edge = lc.backing_edge;
            te.component = comp_index;
            pool.push_back(te);
        }
    }
    std::vector<Edge> edges;
    edges.reserve(pool.size());
    for (const TreeEdge& e : pool) edges.push_back(Edge{e.u, e.v, e.cost});
    UnionFind uf(tree.terminal_count);
    MstPick pick = kruskal(edges, uf);
    TerminalTree next;
    next.terminal_count = tree.terminal_count;
    for (int pos : pick.kept) next.edges.push_back(pool[pos]);
    return next;
}

}  // namespace

RlcTrace rlc_round(const RlcContext& ctx, const LpSolution& x, const RlcConfig& config,
                   int threads) {
    const Catalog& catalog = *ctx.catalog;
    RlcTrace trace;
    trace.config = config;
    trace.loss_total = 0;

    TerminalTree tree = tree_from_mst(*ctx.terminal_closure);
    trace.initial_tree = tree;

    SplitMix64 rng(config.seed);
    std::vector<int> sampled_components;
    for (long i = 0; i < config.iterations; ++i) {
        IterationRecord rec;
        if (config.certify)
            rec.certificate = bridge_certificate(tree, x, catalog, threads);
        rec.tree_cost_before = tree.cost();

        const int sampled = sample_component(x.x, config.inv_normalizer, rng);
        rec.sampled_component = sampled;
        const FullComponent* fc = nullptr;
        if (sampled >= 0) {
            fc = &catalog.components[sampled];
            sampled_components.push_back(sampled);
            trace.loss_total += fc->loss_cost;
            rec.drop_cost = drop(tree, fc->mask).drop_cost;
            rec.lc_cost = fc->lc_cost();
        } else {
            rec.drop_cost = 0;
            rec.lc_cost = 0;
        }

        TerminalTree next = splice_and_restore(tree, fc, sampled);
        rec.tree_cost_after = next.cost();
        rec.exchange_ok =
            cmp(rec.tree_cost_after, rec.tree_cost_before - rec.drop_cost + rec.lc_cost) <= 0;
        rec.monotone_ok = cmp(rec.tree_cost_after, rec.tree_cost_before) <= 0;
        trace.iterations.push_back(std::move(rec));
        tree = std::move(next);
    }
    if (config.certify) trace.final_certificate = bridge_certificate(tree, x, catalog, threads);
    trace.final_tree = tree;

    // expand to host edges: metric edges through their shortest paths, LC
    // edges through the component edge they copy, plus all sampled losses
    std::set<int> host_edges;
    for (const TreeEdge& e : tree.edges) {
        if (e.origin == TreeEdge::Origin::Metric) {
            for (int id : ctx.terminal_closure->edge_paths[e.backing_edge]) host_edges.insert(id);
        } else {
            for (int id : ctx.full_closure->edge_paths[e.backing_edge]) host_edges.insert(id);
        }
    }
    for (int c : sampled_components)
        for (int metric_id : catalog.components[c].loss_edges)
            for (int id : ctx.full_closure->edge_paths[metric_id]) host_edges.insert(id);

    // MST of the union, then repeatedly shed Steiner leaves
    std::vector<int> union_ids(host_edges.begin(), host_edges.end());
    std::vector<Edge> union_edges;
    union_edges.reserve(union_ids.size());
    for (int id : union_ids) union_edges.push_back(ctx.host->edges[id]);
    UnionFind uf(ctx.host->n);
    MstPick pick = kruskal(union_edges, uf);
    std::set<int> final_ids;
    for (int pos : pick.kept) final_ids.insert(union_ids[pos]);
    for (;;) {
        std::map<int, std::vector<int>> incident;
        for (int id : final_ids) {
            incident[ctx.host->edges[id].u].push_back(id);
            incident[ctx.host->edges[id].v].push_back(id);
        }
        bool removed = false;
        for (const auto& [v, inc] : incident) {
            if (!ctx.host->is_terminal(v) && inc.size() == 1) {
                final_ids.erase(inc[0]);
                removed = true;
                break;
            }
        }
        if (!removed) break;
    }
    trace.alg_edges.assign(final_ids.begin(), final_ids.end());
    trace.alg_cost = 0;
    for (int id : trace.alg_edges) trace.alg_cost += ctx.host->edges[id].cost;

    {
        UnionFind conn(ctx.host->n);
        for (int id : trace.alg_edges) conn.unite(ctx.host->edges[id].u, ctx.host->edges[id].v);
        const std::vector<int> terms = ctx.host->terminals();
        trace.alg_connected = true;
        for (std::size_t i = 1; i < terms.size(); ++i)
            if (conn.find(terms[i]) != conn.find(terms[0])) trace.alg_connected = false;
    }
    trace.alg_decomposition_ok =
        cmp(trace.alg_cost, trace.final_tree.cost() + trace.loss_total) <= 0;
    return trace;
}

}  // namespace steiner
