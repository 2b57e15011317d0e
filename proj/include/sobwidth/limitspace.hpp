#pragma once

#include <utility>

#include <gmpxx.h>

namespace sobwidth {

/// Shell m of the 3^d-dimensional limit space: D(m,d) = 2^m binom(d,m) points
/// at budget m, C(m,d) = sum_{j<=m} D(j,d) points at budget <= m.
struct LimitShell {
    int m = 0;
    mpz_class size;        // D(m,d)
    mpz_class cumulative;  // C(m,d)
    double value = 0.0;    // (1+m)^{-1/2}
};

LimitShell limit_count(int d, int m);

/// dim W = 3^d.
mpz_class limit_dim(int d);

/// Smallest m with C(m,d) >= n; requires 1 <= n <= 3^d.
int limit_shell_index(int d, const mpz_class& n);

/// a_n for the limit space: (1+m)^{-1/2} on shell m, exactly 0 past rank 3^d.
double limit_approx_number(int d, const mpz_class& n);

/// Analytic bounds on the shell index of rank n for C(2,d) < n <= 3^d.
/// The sharp bounds hold for shells 3 <= m < d/2; elsewhere the trivial
/// bracket [0, d] is returned. Logarithms are base 2.
std::pair<double, double> limit_preasymptotic_bracket(int d, const mpz_class& n);

}  // namespace sobwidth
