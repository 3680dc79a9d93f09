#include <doctest.h>

#include "steiner/simplex.hpp"
#include "steiner/rng.hpp"
#include "support/oracles.hpp"

using namespace steiner;

namespace {

LpProblem make(int vars, std::vector<Rat> objective) {
    LpProblem p;
    p.num_vars = vars;
    p.objective = std::move(objective);
    return p;
}

void add_row(LpProblem& p, std::vector<std::pair<int, Rat>> coeffs, char sense, Rat rhs) {
    p.constraints.push_back(LpConstraint{std::move(coeffs), sense, std::move(rhs)});
}

}  // namespace

TEST_CASE("simplex solves a textbook minimum") {
    // min x + 2y  s.t.  x + y = 3, x <= 2
    LpProblem p = make(2, {Rat(1), Rat(2)});
    add_row(p, {{0, Rat(1)}, {1, Rat(1)}}, 'E', Rat(3));
    add_row(p, {{0, Rat(1)}}, 'L', Rat(2));
    const LpResult r = solve_exact_lp(p);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.x[0] == Rat(2));
    CHECK(r.x[1] == Rat(1));
    CHECK(r.objective == Rat(4));
}

TEST_CASE("simplex detects infeasibility") {
    LpProblem p = make(1, {Rat(1)});
    add_row(p, {{0, Rat(1)}}, 'L', Rat(1));
    add_row(p, {{0, Rat(1)}}, 'E', Rat(5));
    CHECK(solve_exact_lp(p).status == LpStatus::Infeasible);
}

TEST_CASE("simplex detects unboundedness") {
    // min -x with only x >= 0
    LpProblem p = make(1, {Rat(-1)});
    add_row(p, {{0, Rat(0)}}, 'L', Rat(1));
    CHECK(solve_exact_lp(p).status == LpStatus::Unbounded);
}

TEST_CASE("negative right-hand sides are normalized correctly") {
    // min x  s.t.  -x <= -2  (i.e. x >= 2)
    LpProblem p = make(1, {Rat(1)});
    add_row(p, {{0, Rat(-1)}}, 'L', Rat(-2));
    const LpResult r = solve_exact_lp(p);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.x[0] == Rat(2));
}

TEST_CASE("fractional vertices come out exact") {
    // min -x - y  s.t.  2x + y <= 3, x + 2y <= 3  ->  x = y = 1, but with
    // rhs 2 the optimum sits at (2/3, 2/3)
    LpProblem p = make(2, {Rat(-1), Rat(-1)});
    add_row(p, {{0, Rat(2)}, {1, Rat(1)}}, 'L', Rat(2));
    add_row(p, {{0, Rat(1)}, {1, Rat(2)}}, 'L', Rat(2));
    const LpResult r = solve_exact_lp(p);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.x[0] == Rat(2, 3));
    CHECK(r.x[1] == Rat(2, 3));
    CHECK(r.objective == Rat(-4, 3));
}

TEST_CASE("a classically degenerate LP terminates under Bland") {
    // Beale-style cycling example; Bland's rule must terminate
    LpProblem p = make(4, {Rat(-3, 4), Rat(150), Rat(-1, 50), Rat(6)});
    add_row(p, {{0, Rat(1, 4)}, {1, Rat(-60)}, {2, Rat(-1, 25)}, {3, Rat(9)}}, 'L', Rat(0));
    add_row(p, {{0, Rat(1, 2)}, {1, Rat(-90)}, {2, Rat(-1, 50)}, {3, Rat(3)}}, 'L', Rat(0));
    add_row(p, {{2, Rat(1)}}, 'L', Rat(1));
    const LpResult r = solve_exact_lp(p);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.objective == Rat(-1, 20));
}

TEST_CASE("simplex matches brute-force vertex enumeration on random boxed LPs") {
    SplitMix64 rng(2024);
    int optimal_seen = 0;
    for (int round = 0; round < 60; ++round) {
        const int n = 2 + static_cast<int>(rng.next_below(3));
        LpProblem p = make(n, {});
        p.objective.resize(n);
        for (int j = 0; j < n; ++j)
            p.objective[j] = Rat(static_cast<long>(rng.next_below(11)) - 5);
        const int rows = 1 + static_cast<int>(rng.next_below(3));
        for (int i = 0; i < rows; ++i) {
            std::vector<std::pair<int, Rat>> coeffs;
            for (int j = 0; j < n; ++j) {
                const long c = static_cast<long>(rng.next_below(7)) - 3;
                if (c != 0) coeffs.emplace_back(j, Rat(c));
            }
            const char sense = rng.next_below(4) == 0 ? 'E' : 'L';
            const long rhs = static_cast<long>(rng.next_below(11)) - 2;
            if (coeffs.empty()) continue;
            add_row(p, std::move(coeffs), sense, Rat(rhs));
        }
        for (int j = 0; j < n; ++j) add_row(p, {{j, Rat(1)}}, 'L', Rat(10));  // box

        const LpResult got = solve_exact_lp(p);
        const auto want = testing::brute_force_lp_optimum(p);
        if (got.status == LpStatus::Optimal) {
            ++optimal_seen;
            REQUIRE(want.has_value());
            CHECK(got.objective == *want);
        } else {
            CHECK(got.status == LpStatus::Infeasible);
            CHECK(!want.has_value());
        }
    }
    CHECK(optimal_seen > 20);  // the generator must actually exercise the solver
}

TEST_CASE("dropping an equality row can only lower the minimum") {
    SplitMix64 rng(77);
    for (int round = 0; round < 20; ++round) {
        const int n = 2 + static_cast<int>(rng.next_below(2));
        LpProblem p = make(n, {});
        p.objective.resize(n);
        for (int j = 0; j < n; ++j) p.objective[j] = Rat(static_cast<long>(rng.next_below(9)));
        std::vector<std::pair<int, Rat>> eq;
        for (int j = 0; j < n; ++j) eq.emplace_back(j, Rat(1 + static_cast<long>(rng.next_below(3))));
        add_row(p, eq, 'E', Rat(2 + static_cast<long>(rng.next_below(5))));
        add_row(p, {{0, Rat(1)}}, 'L', Rat(6));
        const LpResult full = solve_exact_lp(p);
        if (full.status != LpStatus::Optimal) continue;
        LpProblem relaxed = p;
        relaxed.constraints.erase(relaxed.constraints.begin());
        const LpResult r = solve_exact_lp(relaxed);
        REQUIRE(r.status == LpStatus::Optimal);
        CHECK(r.objective <= full.objective);
    }
}
