#include "sobwidth/envelopes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sobwidth/bignum.hpp"
#include "sobwidth/limitspace.hpp"
#include "sobwidth/spectrum.hpp"
#include "sobwidth/volumetrics.hpp"

namespace sobwidth {
namespace {

struct AsymptoticConstants {
    double lower;
    double upper;        // looser constant, factor (1 + (2v+1)/(2v))^{u/(2v)}
    double upper_tight;  // tighter constant, factor ((2v+1)/(2v))^{u/(2v)}
};

AsymptoticConstants asymptotic_constants(const SmoothnessProfile& prof) {
    double u = prof.u, v = prof.v, p = prof.p;
    double d = static_cast<double>(prof.d);
    double lower = std::exp2(v - p) / std::sqrt(std::numbers::e * (d + 2.0 * u));
    double tail = std::sqrt(2.0 * std::numbers::e * u / d);
    double ratio = (2.0 * v + 1.0) / (2.0 * v);
    double ex = u / (2.0 * v);
    return {lower, std::exp2(p + u) * std::pow(1.0 + ratio, ex) * tail,
            std::exp2(p + u) * std::pow(ratio, ex) * tail};
}

// ln(1 + k^{2p}) without overflowing the inner power.
double log1p_pow(std::uint64_t k, double two_p) {
    if (k == 0) return 0.0;
    double e = two_p * std::log(static_cast<double>(k));
    if (e > 700.0) return e;
    return std::log1p(std::exp(e));
}

}  // namespace

const char* to_string(Regime r) {
    switch (r) {
        case Regime::kSmall: return "SMALL";
        case Regime::kPreasymptotic: return "PREASYMPTOTIC";
        case Regime::kAsymptotic: return "ASYMPTOTIC";
    }
    return "?";
}

double preasymptotic_value(int d, std::uint64_t n) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    if (n < 2) throw std::domain_error("preasymptotic_value requires n >= 2");
    double ln = std::log2(static_cast<double>(n));
    return std::sqrt(std::log2(1.0 + d / ln) / ln);
}

Envelope asymptotic_envelope(const SmoothnessProfile& prof, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("rank must be >= 1");
    AsymptoticConstants c = asymptotic_constants(prof);
    double decay = std::pow(static_cast<double>(n), -prof.g);
    Envelope env;
    env.regime = Regime::kAsymptotic;
    env.comparison = decay / std::sqrt(static_cast<double>(prof.d));
    env.lower = c.lower * decay;
    env.upper = c.upper * decay;
    env.upper_tight = c.upper_tight * decay;
    env.guaranteed = std::log(static_cast<double>(n)) > prof.d * prof.log_e;
    return env;
}

Envelope piecewise_envelope(const SmoothnessProfile& prof, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("rank must be >= 1");
    if (n <= static_cast<std::uint64_t>(prof.d)) {
        Envelope env;
        env.regime = Regime::kSmall;
        env.comparison = 1.0;
        return env;
    }
    mpz_class rank(static_cast<unsigned long>(n));
    if (rank <= limit_dim(prof.d)) {
        Envelope env;
        env.regime = Regime::kPreasymptotic;
        env.comparison = preasymptotic_value(prof.d, n);
        return env;
    }
    return asymptotic_envelope(prof, n);
}

CountingSandwich counting_sandwich(const SmoothnessProfile& prof, std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("counting_sandwich requires m >= 1");
    std::vector<double> doubled(prof.r.size());
    for (std::size_t j = 0; j < prof.r.size(); ++j) doubled[j] = 2.0 * prof.r[j];
    double lvol = log_volume_ball(doubled).log_value;
    double pg = prof.p / prof.g;
    double md = static_cast<double>(m);
    CountingSandwich s;
    s.lower = md <= prof.b_r ? 0.0 : std::exp(pg * std::log(md - prof.b_r) + lvol);
    s.upper = std::exp(pg * std::log(md + prof.b_r) + lvol);
    s.exact = count_c(prof, m);
    return s;
}

std::pair<double, double> strong_equiv_bracket(const SmoothnessProfile& prof, std::uint64_t n) {
    if (n < 2) throw std::domain_error("strong_equiv_bracket requires n >= 2");
    // m* = least m >= 1 with C(m,R,d) >= n
    std::uint64_t hi = 1;
    while (mpz_cmp_ui(count_c(prof, hi).get_mpz_t(), static_cast<unsigned long>(n)) < 0) {
        hi *= 2;
        if (hi > (1ULL << 40)) throw std::overflow_error("strong_equiv_bracket: step search diverged");
    }
    std::uint64_t lo = hi / 2;
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (mpz_cmp_ui(count_c(prof, mid).get_mpz_t(), static_cast<unsigned long>(n)) >= 0)
            hi = mid;
        else
            lo = mid;
    }
    std::uint64_t m = hi;
    double two_p = 2.0 * prof.p;
    double upper = std::exp(prof.g * ln_mpz(count_c(prof, m)) - 0.5 * log1p_pow(m - 1, two_p));
    double lower = std::exp(prof.g * ln_mpz(count_c(prof, m - 1)) - 0.5 * log1p_pow(m, two_p));
    return {lower, upper};
}

}  // namespace sobwidth
