#include "sobwidth/profile.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sobwidth {

double pow_abs(double x, double t) {
    double a = std::fabs(x);
    if (a == 0.0) return 0.0;
    if (a == 1.0) return 1.0;
    return std::exp(t * std::log(a));
}

SmoothnessProfile make_profile(std::span<const double> r) {
    if (r.empty()) throw std::invalid_argument("smoothness vector must not be empty");
    SmoothnessProfile prof;
    prof.r.assign(r.begin(), r.end());
    prof.d = static_cast<int>(prof.r.size());
    prof.u = prof.r[0];
    prof.v = prof.r[0];
    prof.isotropic = true;
    prof.integral_two_r = true;
    double inv_sum = 0.0;
    for (int j = 0; j < prof.d; ++j) {
        double rj = prof.r[static_cast<std::size_t>(j)];
        if (!std::isfinite(rj) || !(rj > 0.0))
            throw std::invalid_argument("smoothness entry " + std::to_string(j + 1) +
                                        " must be a positive finite real, got " + std::to_string(rj));
        prof.u = std::max(prof.u, rj);
        prof.v = std::min(prof.v, rj);
        inv_sum += 1.0 / rj;
        if (rj != prof.r[0]) prof.isotropic = false;
        double tr = 2.0 * rj;
        if (tr != std::floor(tr) || tr > 62.0) prof.integral_two_r = false;
    }
    prof.g = 1.0 / inv_sum;
    prof.p = std::max(0.5, prof.u);

    double halves = 0.0;
    for (double rj : prof.r) halves += std::pow(0.5, 2.0 * rj);
    prof.b_r = std::pow(halves, 1.0 / (2.0 * prof.p));

    // E = 4^{p/v} 2^{u/v} (1 + 1/(2v))^{u/(2v^2)} (2ep)^{1/(2v)}, kept in logs:
    // E^d overflows double already for moderate d.
    prof.log_e = (prof.p / prof.v) * std::log(4.0) + (prof.u / prof.v) * std::numbers::ln2 +
                 (prof.u / (2.0 * prof.v * prof.v)) * std::log1p(1.0 / (2.0 * prof.v)) +
                 (1.0 / (2.0 * prof.v)) * std::log(2.0 * std::numbers::e * prof.p);
    return prof;
}

SmoothnessProfile make_profile(std::initializer_list<double> r) {
    return make_profile(std::span<const double>(r.begin(), r.size()));
}

double quasi_norm(std::span<const double> x, const SmoothnessProfile& prof) {
    if (static_cast<int>(x.size()) != prof.d)
        throw std::invalid_argument("quasi_norm: vector has length " + std::to_string(x.size()) +
                                    ", profile has dimension " + std::to_string(prof.d));
    double s = 0.0;
    for (int j = 0; j < prof.d; ++j) s += pow_abs(x[static_cast<std::size_t>(j)], prof.two_r(j));
    if (s == 0.0) return 0.0;
    return std::pow(s, 1.0 / (2.0 * prof.p));
}

}  // namespace sobwidth
