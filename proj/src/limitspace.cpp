#include "sobwidth/limitspace.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sobwidth/bignum.hpp"

namespace sobwidth {
namespace {

void check_d(int d) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
}

mpz_class cumulative(int d, int m, mpz_class* shell_out) {
    mpz_class c = 0, t;
    for (int j = 0; j <= m; ++j) {
        mpz_bin_uiui(t.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(j));
        t <<= j;
        if (shell_out && j == m) *shell_out = t;
        c += t;
    }
    return c;
}

}  // namespace

LimitShell limit_count(int d, int m) {
    check_d(d);
    if (m < 0 || m > d)
        throw std::domain_error("shell index " + std::to_string(m) + " outside [0, " + std::to_string(d) + "]");
    LimitShell s;
    s.m = m;
    s.cumulative = cumulative(d, m, &s.size);
    s.value = 1.0 / std::sqrt(1.0 + m);
    return s;
}

mpz_class limit_dim(int d) {
    check_d(d);
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 3, static_cast<unsigned long>(d));
    return r;
}

int limit_shell_index(int d, const mpz_class& n) {
    check_d(d);
    if (n < 1 || n > limit_dim(d)) throw std::domain_error("rank outside [1, 3^d]");
    int lo = 0, hi = d;
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (cumulative(d, mid, nullptr) >= n)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

double limit_approx_number(int d, const mpz_class& n) {
    check_d(d);
    if (n < 1) throw std::invalid_argument("rank must be >= 1");
    if (n > limit_dim(d)) return 0.0;
    int m = limit_shell_index(d, n);
    return 1.0 / std::sqrt(1.0 + m);
}

std::pair<double, double> limit_preasymptotic_bracket(int d, const mpz_class& n) {
    check_d(d);
    mpz_class c2 = d >= 2 ? limit_count(d, 2).cumulative : limit_dim(d);
    if (d >= 2 && !(n > c2 && n <= limit_dim(d)))
        throw std::domain_error("rank outside (C(2,d), 3^d]");
    if (d < 2) throw std::domain_error("bracket window requires d >= 2");
    int m = limit_shell_index(d, n);
    if (!(3 <= m && m < d / 2.0)) return {0.0, static_cast<double>(d)};
    double ln = log2_mpz(n);
    double lower = ln / (2.0 * std::log2(4.0 * std::numbers::e * d / ln));
    double upper = ln / std::log2(2.0 * d / ln) + 1.0;
    return {lower, upper};
}

}  // namespace sobwidth
