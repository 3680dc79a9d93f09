#include "steiner/constants.hpp"

namespace steiner {

const RationalBounds& ln3_bounds() {
    static const RationalBounds bounds = [] {
        // 2*atanh(1/2) = 2 * sum_{k>=0} (1/2)^(2k+1) / (2k+1)
        const int n = 100;
        Rat sum = 0;
        Rat power(1, 2);  // (1/2)^(2k+1)
        const Rat quarter(1, 4);
        for (int k = 0; k <= n; ++k) {
            sum += power / (2 * k + 1);
            power *= quarter;
        }
        // tail < (1/2)^(2n+3) / (2n+3) * 1/(1 - 1/4)
        Rat tail = power / (2 * n + 3) * Rat(4, 3);
        return RationalBounds{2 * sum, 2 * (sum + tail)};
    }();
    return bounds;
}

RationalBounds exp_neg_bounds(const Rat& x, int terms) {
    if (x <= 0 || x >= 8) throw Error("exp_neg_bounds: argument out of range");
    if (terms < 16) throw Error("exp_neg_bounds: too few terms");
    // Alternating series sum_k (-x)^k / k!; once k > x the term magnitudes
    // decrease, so consecutive partial sums bracket the limit.
    Rat term = 1;
    Rat sum = 1;
    Rat prev = 1;
    for (int k = 1; k <= terms; ++k) {
        term *= -x;
        term /= k;
        prev = sum;
        sum += term;
    }
    if (sum <= prev) return {sum, prev};
    return {prev, sum};
}

const RationalBounds& alpha_bounds() {
    static const RationalBounds bounds = [] {
        // f(a) = a - 1 - exp(-a) is strictly increasing; bisect for its root.
        const int terms = 56;
        Rat lo(5, 4), hi(4, 3);
        auto sign_ok = [&](const Rat& lo_pt, const Rat& hi_pt) {
            const RationalBounds elo = exp_neg_bounds(lo_pt, terms);
            const RationalBounds ehi = exp_neg_bounds(hi_pt, terms);
            return lo_pt - 1 - elo.lo < 0 && hi_pt - 1 - ehi.hi > 0;
        };
        if (!sign_ok(lo, hi)) throw Error("alpha_bounds: initial bracket invalid");
        Rat target(1);
        for (int i = 0; i < 52; ++i) target /= 10;
        for (int i = 0; i < 180 && hi - lo > target; ++i) {
            const Rat mid = (lo + hi) / 2;
            const RationalBounds e = exp_neg_bounds(mid, terms);
            if (mid - 1 - e.hi > 0) {
                hi = mid;
            } else if (mid - 1 - e.lo < 0) {
                lo = mid;
            } else {
                // enclosure of exp too wide to decide; cannot happen before
                // the interval itself shrinks to ~1e-60
                break;
            }
        }
        return RationalBounds{lo, hi};
    }();
    return bounds;
}

const RationalBounds& gap_ratio_bounds() {
    static const RationalBounds bounds = [] {
        const RationalBounds& l = ln3_bounds();
        return RationalBounds{1 + l.lo / 2, 1 + l.hi / 2};
    }();
    return bounds;
}

}  // namespace steiner
