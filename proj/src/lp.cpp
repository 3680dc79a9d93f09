#include "steiner/lp.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

#include <algorithm>

namespace steiner {

HypergraphicLp build_lp(const Catalog& catalog, int terminal_cap) {
    const int k = catalog.terminal_count;
    if (k > terminal_cap)
        throw Error("build_lp: " + std::to_string(k) + " terminals exceed the subset-enumeration cap of " +
                    std::to_string(terminal_cap) + "; lower r or use a smaller instance");
    HypergraphicLp lp;
    lp.terminal_count = k;
    for (const FullComponent& fc : catalog.components) {
        lp.component_masks.push_back(fc.mask);
        lp.component_costs.push_back(fc.cost);
    }
    const TerminalMask full = (TerminalMask{1} << k) - 1;
    lp.rows.reserve(full);
    for (TerminalMask s = 1; s <= full; ++s)
        lp.rows.push_back(LpRow{s, __builtin_popcount(s) - 1});
    return lp;
}

std::vector<std::pair<int, Rat>> scan_violated_rows_serial(const HypergraphicLp& lp,
                                                           const std::vector<Rat>& x) {
    return scan_violated_rows(lp, x, 1);
}

std::vector<std::pair<int, Rat>> scan_violated_rows(const HypergraphicLp& lp,
                                                    const std::vector<Rat>& x, int threads) {
    const int nc = static_cast<int>(lp.component_masks.size());
    std::vector<int> support;
    for (int c = 0; c < nc; ++c)
        if (x[c] != 0) support.push_back(c);

    const int nrows = static_cast<int>(lp.rows.size());
    const int nt = threads > 1 ? threads : 1;
    std::vector<std::vector<std::pair<int, Rat>>> found(nt);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) num_threads(nt)
#endif
    for (int i = 0; i < nrows; ++i) {
#if defined(_OPENMP)
        const int slot = omp_in_parallel() ? omp_get_thread_num() : 0;
#else
        const int slot = 0;
#endif
        const LpRow& row = lp.rows[i];
        Rat lhs = 0;
        for (int c : support) {
            const int coeff = row_coefficient(lp.component_masks[c], row.subset);
            if (coeff == 1)
                lhs += x[c];
            else if (coeff > 1)
                lhs += coeff * x[c];
        }
        if (cmp(lhs, Rat(row.rhs)) > 0) found[slot].emplace_back(i, lhs - row.rhs);
    }

    std::vector<std::pair<int, Rat>> all;
    for (auto& part : found)
        for (auto& v : part) all.push_back(std::move(v));
    std::sort(all.begin(), all.end(), [&](const auto& a, const auto& b) {
        const int c = cmp(a.second, b.second);
        if (c != 0) return c > 0;
        return a.first < b.first;
    });
    return all;
}

LpSolution solve_lp(const HypergraphicLp& lp, const Catalog& catalog, int threads) {
    const int nc = static_cast<int>(lp.component_masks.size());
    if (nc == 0) throw Error("solve_lp: empty catalog");

    LpProblem problem;
    problem.num_vars = nc;
    problem.objective = lp.component_costs;

    LpConstraint equality;
    equality.sense = 'E';
    equality.rhs = lp.equality_rhs();
    for (int c = 0; c < nc; ++c)
        equality.coeffs.emplace_back(c, Rat(__builtin_popcount(lp.component_masks[c]) - 1));
    problem.constraints.push_back(std::move(equality));

    std::vector<char> active(lp.rows.size(), 0);
    const std::size_t max_rounds = lp.rows.size() + 2;
    LpResult solved;
    bool converged = false;
    for (std::size_t round = 0; round < max_rounds && !converged; ++round) {
        solved = solve_exact_lp(problem);
        if (solved.status == LpStatus::Infeasible)
            throw Error("solve_lp: relaxation infeasible (catalog cannot span the terminals)");
        if (solved.status == LpStatus::Unbounded)
            throw Error("solve_lp: relaxation unbounded; this cannot happen with nonnegative costs");

        std::vector<std::pair<int, Rat>> violated = scan_violated_rows(lp, solved.x, threads);
        if (violated.empty()) {
            converged = true;
            break;
        }
        int added = 0;
        for (const auto& [row_idx, violation] : violated) {
            if (active[row_idx]) throw Error("solve_lp: active row reported violated");
            active[row_idx] = 1;
            LpConstraint c;
            c.sense = 'L';
            c.rhs = lp.rows[row_idx].rhs;
            for (int comp = 0; comp < nc; ++comp) {
                const int coeff = row_coefficient(lp.component_masks[comp], lp.rows[row_idx].subset);
                if (coeff > 0) c.coeffs.emplace_back(comp, Rat(coeff));
            }
            problem.constraints.push_back(std::move(c));
            if (++added >= 64) break;
        }
    }
    if (!converged) throw Error("solve_lp: row activation failed to converge");

    LpSolution solution;
    solution.x = std::move(solved.x);
    solution.lp_star = std::move(solved.objective);
    solution.loss_star = 0;
    solution.mass = 0;
    for (int c = 0; c < nc; ++c) {
        if (solution.x[c] == 0) continue;
        if (solution.x[c] < 0) throw Error("solve_lp: negative component weight");
        solution.mass += solution.x[c];
        solution.loss_star += solution.x[c] * catalog.components[c].loss_cost;
    }
    return solution;
}

PolytopeVerdict check_spanning_tree_polytope_serial(const SpanningTreePolytopePoint& point) {
    return check_spanning_tree_polytope(point, 1);
}

PolytopeVerdict check_spanning_tree_polytope(const SpanningTreePolytopePoint& point, int threads) {
    const TerminalMultigraph& h = point.h;
    if (point.z.size() != h.edges.size())
        throw Error("check_spanning_tree_polytope: z size mismatch");

    PolytopeVerdict verdict;
    verdict.total = 0;
    for (const Rat& z : point.z) {
        if (z < 0) verdict.nonnegative = false;
        verdict.total += z;
    }
    verdict.total_ok = cmp(verdict.total, Rat(h.n - 1)) == 0;

    if (h.n >= 2) {
        const TerminalMask full = (TerminalMask{1} << h.n) - 1;
        const int nt = threads > 1 ? threads : 1;
        std::vector<std::vector<SubsetViolation>> found(nt);
        const long last = static_cast<long>(full) - 1;  // proper subsets only
        // larger subsets accumulate more z terms, so interleave chunks
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 512) num_threads(nt)
#endif
        for (long s = 1; s <= last; ++s) {
#if defined(_OPENMP)
            const int slot = omp_in_parallel() ? omp_get_thread_num() : 0;
#else
            const int slot = 0;
#endif
            const TerminalMask mask = static_cast<TerminalMask>(s);
            Rat inside = 0;
            for (std::size_t e = 0; e < h.edges.size(); ++e) {
                const TerminalMask ends =
                    (TerminalMask{1} << h.edges[e].u) | (TerminalMask{1} << h.edges[e].v);
                if ((ends & mask) == ends) inside += point.z[e];
            }
            const Rat rhs(__builtin_popcount(mask) - 1);
            if (cmp(inside, rhs) > 0)
                found[slot].push_back(SubsetViolation{mask, std::move(inside), rhs});
        }
        for (auto& part : found)
            for (auto& v : part) verdict.violations.push_back(std::move(v));
        std::sort(verdict.violations.begin(), verdict.violations.end(),
                  [](const SubsetViolation& a, const SubsetViolation& b) { return a.subset < b.subset; });
    }
    return verdict;
}

bool is_integral_hyper_spanning_tree(const std::vector<Rat>& x,
                                     const std::vector<TerminalMask>& component_masks,
                                     int terminal_count) {
    if (x.size() != component_masks.size())
        throw Error("is_integral_hyper_spanning_tree: size mismatch");
    long edge_count = 0;  // sum of multiplicity * (|K| - 1)
    UnionFind uf(terminal_count);
    for (std::size_t c = 0; c < x.size(); ++c) {
        if (x[c] == 0) continue;
        if (x[c].get_den() != 1 || x[c] < 0)
            throw Error("is_integral_hyper_spanning_tree: x is not a nonnegative integer vector");
        const long mult = x[c].get_num().get_si();
        const int size = __builtin_popcount(component_masks[c]);
        edge_count += mult * (size - 1);
        int prev = -1;
        for (int b = 0; b < terminal_count; ++b) {
            if (!(component_masks[c] & (TerminalMask{1} << b))) continue;
            if (prev >= 0) uf.unite(prev, b);
            prev = b;
        }
    }
    if (edge_count != terminal_count - 1) return false;
    return uf.components() == 1;
}

}  // namespace steiner
