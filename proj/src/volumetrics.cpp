#include "sobwidth/volumetrics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sobwidth {
namespace {

void check_exponents(std::span<const double> exponents) {
    if (exponents.empty()) throw std::invalid_argument("exponent vector must not be empty");
    for (double r : exponents)
        if (!std::isfinite(r) || !(r > 0.0))
            throw std::invalid_argument("ball exponents must be positive finite reals");
}

}  // namespace

double lgamma_pos(double x) {
    if (!(x > 0.0)) throw std::domain_error("lgamma_pos requires x > 0");
    if (x < 0.5) return lgamma_pos(x + 1.0) - std::log(x);
    static constexpr double c[9] = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    double z = x - 1.0;
    double a = c[0];
    for (int i = 1; i < 9; ++i) a += c[i] / (z + i);
    double t = z + 7.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

LogVolume log_volume_ball(std::span<const double> exponents) {
    check_exponents(exponents);
    LogVolume v;
    v.d = static_cast<int>(exponents.size());
    v.exponents.assign(exponents.begin(), exponents.end());
    double inv_sum = 0.0;
    double lg = 0.0;
    for (double r : exponents) {
        inv_sum += 1.0 / r;
        lg += lgamma_pos(1.0 + 1.0 / r);
    }
    v.log_value = v.d * std::numbers::ln2 + lg - lgamma_pos(1.0 + inv_sum);
    return v;
}

LogVolume log_scaled_volume(std::span<const double> exponents, double t) {
    if (!std::isfinite(t) || !(t > 0.0)) throw std::invalid_argument("scale t must be positive");
    LogVolume v = log_volume_ball(exponents);
    double inv_sum = 0.0;
    for (double r : exponents) inv_sum += 1.0 / r;
    v.log_value += inv_sum * std::log(t);
    return v;
}

double log_strong_equiv_constant(const SmoothnessProfile& prof) {
    std::vector<double> doubled(prof.r.size());
    for (std::size_t j = 0; j < prof.r.size(); ++j) doubled[j] = 2.0 * prof.r[j];
    return prof.g * log_volume_ball(doubled).log_value;
}

double strong_equiv_constant(const SmoothnessProfile& prof) {
    return std::exp(log_strong_equiv_constant(prof));
}

std::pair<double, double> gamma_bracket(double x) {
    if (!(x >= 0.0)) throw std::domain_error("gamma_bracket requires x >= 0");
    if (x == 0.0) return {1.0, 1.0};
    double lower = std::exp(x * (std::log(x) - 1.0));
    double upper = std::exp(x * std::log1p(x));
    return {lower, upper};
}

std::pair<double, double> volume_constant_bracket(const SmoothnessProfile& prof) {
    double u = prof.u, v = prof.v;
    double d = static_cast<double>(prof.d);
    double lower = std::exp2(v) / std::sqrt(std::numbers::e * (d + 2.0 * u));
    double upper = std::exp2(u) * std::pow((2.0 * v + 1.0) / (2.0 * v), u / (2.0 * v)) *
                   std::sqrt(2.0 * std::numbers::e * u / d);
    return {lower, upper};
}

}  // namespace sobwidth
