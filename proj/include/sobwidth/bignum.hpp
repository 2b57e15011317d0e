#pragma once

#include <cmath>
#include <numbers>

#include <gmpxx.h>

namespace sobwidth {

/// ln n for n >= 1, via mantissa + binary exponent; never materializes n as a
/// double, so 3^1000-sized counts are fine.
inline double ln_mpz(const mpz_class& n) {
    signed long e = 0;
    double m = mpz_get_d_2exp(&e, n.get_mpz_t());
    return std::log(m) + static_cast<double>(e) * std::numbers::ln2;
}

/// log2 n for n >= 1.
inline double log2_mpz(const mpz_class& n) {
    signed long e = 0;
    double m = mpz_get_d_2exp(&e, n.get_mpz_t());
    return std::log2(m) + static_cast<double>(e);
}

}  // namespace sobwidth
