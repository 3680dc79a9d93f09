#pragma once

#include "steiner/rational.hpp"

namespace steiner {

// Certified rational enclosure lo <= value <= hi of an irrational constant.
struct RationalBounds {
    Rat lo;
    Rat hi;
    Rat width() const { return hi - lo; }
};

// ln 3 = 2*atanh(1/2), summed exactly with an explicit geometric tail
// bound. Enclosure width below 10^-55.
const RationalBounds& ln3_bounds();

// The root of a = 1 + exp(-a) (~1.2785), bracketed by rational bisection
// with alternating-series bounds on exp. Enclosure width below 10^-50.
const RationalBounds& alpha_bounds();

// 1 + ln(3)/2, the general-mode performance ratio (~1.5493).
const RationalBounds& gap_ratio_bounds();

// Enclosure of exp(-x) for rational x in (0, 8).
RationalBounds exp_neg_bounds(const Rat& x, int terms);

}  // namespace steiner
