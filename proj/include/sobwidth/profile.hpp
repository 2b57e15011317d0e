#pragma once

#include <initializer_list>
#include <span>
#include <vector>

namespace sobwidth {

/// Smoothness vector R together with every scalar derived from it.
/// Instances are built by make_profile and never mutated afterwards, so they
/// are safe to share across threads.
struct SmoothnessProfile {
    std::vector<double> r;        // R_1..R_d, all finite and > 0
    int d = 0;                    // = r.size()
    double u = 0;                 // max_j R_j
    double v = 0;                 // min_j R_j
    double g = 0;                 // harmonic exponent 1/(1/R_1 + ... + 1/R_d)
    double p = 0;                 // max(1/2, u)
    double b_r = 0;               // (sum_j (1/2)^{2R_j})^{1/(2p)}
    double log_e = 0;             // ln E; the n > E^d window is tested as ln n > d ln E
    bool isotropic = false;       // all entries equal (exact comparison of the inputs)
    bool integral_two_r = false;  // every 2R_j is an integer; enables exact counting

    double two_r(int j) const { return 2.0 * r[static_cast<std::size_t>(j)]; }
};

SmoothnessProfile make_profile(std::span<const double> r);
SmoothnessProfile make_profile(std::initializer_list<double> r);

/// (sum_j |x_j|^{2R_j})^{1/(2p)}. Subadditive in x up to rounding.
double quasi_norm(std::span<const double> x, const SmoothnessProfile& prof);

/// |x|^t with the convention 0^t = 0 for t > 0.
double pow_abs(double x, double t);

}  // namespace sobwidth
