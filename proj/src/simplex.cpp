#include "steiner/simplex.hpp"

namespace steiner {

namespace {

struct Tableau {
    int rows = 0, cols = 0;  // cols excludes the rhs column
    std::vector<std::vector<Rat>> a;  // rows x (cols + 1); last column is rhs
    std::vector<int> basis;           // basic column per row

    Rat& rhs(int i) { return a[i][cols]; }

    void pivot(int pr, int pc) {
        const Rat p = a[pr][pc];
        for (int j = 0; j <= cols; ++j) a[pr][j] /= p;
        for (int i = 0; i < rows; ++i) {
            if (i == pr || a[i][pc] == 0) continue;
            const Rat f = a[i][pc];
            for (int j = 0; j <= cols; ++j)
                if (a[pr][j] != 0) a[i][j] -= f * a[pr][j];
        }
        basis[pr] = pc;
    }
};

// Runs Bland's rule to optimality for the given cost vector (size cols).
// Returns false on unboundedness. `allowed` masks out columns that must
// never enter (retired artificials).
bool optimize(Tableau& t, const std::vector<Rat>& cost, const std::vector<char>& allowed,
              long& pivots) {
    for (;;) {
        // reduced costs from scratch each pass keeps the code simple and
        // the tableau small enough that it does not matter
        int entering = -1;
        for (int j = 0; j < t.cols && entering < 0; ++j) {
            if (!allowed[j]) continue;
            bool basic = false;
            for (int i = 0; i < t.rows; ++i)
                if (t.basis[i] == j) basic = true;
            if (basic) continue;
            Rat reduced = cost[j];
            for (int i = 0; i < t.rows; ++i)
                if (t.a[i][j] != 0 && cost[t.basis[i]] != 0) reduced -= cost[t.basis[i]] * t.a[i][j];
            if (reduced < 0) entering = j;
        }
        if (entering < 0) return true;

        int leaving = -1;
        Rat best_ratio;
        for (int i = 0; i < t.rows; ++i) {
            if (t.a[i][entering] <= 0) continue;
            Rat ratio = t.rhs(i) / t.a[i][entering];
            if (leaving < 0 || cmp(ratio, best_ratio) < 0 ||
                (cmp(ratio, best_ratio) == 0 && t.basis[i] < t.basis[leaving])) {
                leaving = i;
                best_ratio = std::move(ratio);
            }
        }
        if (leaving < 0) return false;
        t.pivot(leaving, entering);
        ++pivots;
    }
}

}  // namespace

LpResult solve_exact_lp(const LpProblem& problem) {
    const int n = problem.num_vars;
    const int m = static_cast<int>(problem.constraints.size());
    if (static_cast<int>(problem.objective.size()) != n)
        throw Error("solve_exact_lp: objective size mismatch");

    // layout: structural 0..n-1, one slack per 'L' row, one artificial per
    // row that needs it
    int num_slacks = 0;
    for (const LpConstraint& c : problem.constraints)
        if (c.sense == 'L')
            ++num_slacks;
        else if (c.sense != 'E')
            throw Error("solve_exact_lp: unknown constraint sense");

    Tableau t;
    t.rows = m;
    std::vector<int> slack_col(m, -1), art_col(m, -1);
    int col = n;
    for (int i = 0; i < m; ++i)
        if (problem.constraints[i].sense == 'L') slack_col[i] = col++;
    const int first_artificial = col;
    // negative-rhs L rows flip sign, turning the slack coefficient to -1,
    // so they need an artificial too; allocate lazily below
    std::vector<char> row_flip(m, 0);
    for (int i = 0; i < m; ++i) {
        const LpConstraint& c = problem.constraints[i];
        row_flip[i] = c.rhs < 0;
        const bool slack_is_basis = c.sense == 'L' && !row_flip[i];
        if (!slack_is_basis) art_col[i] = col++;
    }
    t.cols = col;
    t.a.assign(m, std::vector<Rat>(t.cols + 1, Rat(0)));
    t.basis.assign(m, -1);

    for (int i = 0; i < m; ++i) {
        const LpConstraint& c = problem.constraints[i];
        const int sign = row_flip[i] ? -1 : 1;
        for (const auto& [j, v] : c.coeffs) {
            if (j < 0 || j >= n) throw Error("solve_exact_lp: coefficient index out of range");
            t.a[i][j] += sign * v;
        }
        t.a[i][t.cols] = sign * c.rhs;
        if (slack_col[i] >= 0) t.a[i][slack_col[i]] = sign;
        if (art_col[i] >= 0) {
            t.a[i][art_col[i]] = 1;
            t.basis[i] = art_col[i];
        } else {
            t.basis[i] = slack_col[i];
        }
    }

    LpResult result;
    std::vector<char> allowed(t.cols, 1);

    if (first_artificial < t.cols) {
        std::vector<Rat> phase1(t.cols, Rat(0));
        for (int j = first_artificial; j < t.cols; ++j) phase1[j] = 1;
        if (!optimize(t, phase1, allowed, result.pivots))
            throw Error("solve_exact_lp: phase 1 unbounded");
        Rat infeas = 0;
        for (int i = 0; i < m; ++i)
            if (t.basis[i] >= first_artificial) infeas += t.rhs(i);
        if (infeas != 0) {
            result.status = LpStatus::Infeasible;
            return result;
        }
        // drive leftover zero-valued artificials out of the basis
        for (int i = 0; i < m; ++i) {
            if (t.basis[i] < first_artificial) continue;
            int pc = -1;
            for (int j = 0; j < first_artificial && pc < 0; ++j)
                if (t.a[i][j] != 0) pc = j;
            if (pc >= 0) {
                t.pivot(i, pc);
                ++result.pivots;
            }
            // a fully zero row is redundant; its artificial stays basic at
            // zero and the column is blocked from ever entering
        }
        for (int j = first_artificial; j < t.cols; ++j) allowed[j] = 0;
    }

    std::vector<Rat> phase2(t.cols, Rat(0));
    for (int j = 0; j < n; ++j) phase2[j] = problem.objective[j];
    if (!optimize(t, phase2, allowed, result.pivots)) {
        result.status = LpStatus::Unbounded;
        return result;
    }

    result.status = LpStatus::Optimal;
    result.x.assign(n, Rat(0));
    for (int i = 0; i < m; ++i)
        if (t.basis[i] < n) result.x[t.basis[i]] = t.rhs(i);
    result.objective = 0;
    for (int j = 0; j < n; ++j)
        if (result.x[j] != 0) result.objective += problem.objective[j] * result.x[j];
    return result;
}

}  // namespace steiner
