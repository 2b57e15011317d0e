#pragma once

#include <span>
#include <utility>
#include <vector>

#include "sobwidth/profile.hpp"

namespace sobwidth {

/// A positive volume (or constant) carried in the natural-log domain;
/// Gamma(1 + d/r) overflows linear doubles long before desk scale ends.
struct LogVolume {
    double log_value = 0.0;
    int d = 0;
    std::vector<double> exponents;
};

/// log Gamma(x) for x > 0. Lanczos (g = 7, 9 terms); relative error of the
/// reconstructed Gamma stays below 1e-13 across [1, 1e3], which the test
/// suite pins against an independent implementation.
double lgamma_pos(double x);

/// ln vol{x : sum |x_j|^{r_j} <= 1} = d ln 2 + sum lnG(1+1/r_j) - lnG(1 + sum 1/r_j).
LogVolume log_volume_ball(std::span<const double> exponents);

/// ln vol of the same body inflated to budget t: adds (sum 1/r_j) ln t.
LogVolume log_scaled_volume(std::span<const double> exponents, double t);

/// ln of vol(B_{2R}^d)^{g(R)}, the strong-equivalence limit of n^g a_n.
double log_strong_equiv_constant(const SmoothnessProfile& prof);
double strong_equiv_constant(const SmoothnessProfile& prof);

/// ((x/e)^x, (1+x)^x) with 0^0 = 1; brackets Gamma(1+x) for x >= 0.
std::pair<double, double> gamma_bracket(double x);

/// (2^v (e(d+2u))^{-1/2}, 2^u ((2v+1)/(2v))^{u/(2v)} (2eu/d)^{1/2}):
/// dimension-explicit bounds on strong_equiv_constant.
std::pair<double, double> volume_constant_bracket(const SmoothnessProfile& prof);

}  // namespace sobwidth
