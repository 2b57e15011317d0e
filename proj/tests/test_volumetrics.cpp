#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sobwidth/profile.hpp"
#include "sobwidth/rng.hpp"
#include "sobwidth/volumetrics.hpp"

using namespace sobwidth;

namespace {

bool close(double a, double b, double rel = 1e-12) {
    return std::fabs(a - b) <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

// Adaptive Simpson quadrature, test-side oracle only.
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fb,
               double fm, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, fm, flm, left, tol / 2, depth - 1) +
           simpson(f, m, b, fm, fb, frm, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(f, a, b, fa, fb, fm, whole, tol, 40);
}

}  // namespace

TEST_CASE("log-gamma accuracy against the standard library") {
    // contract: relative error of log-Gamma at most 1e-13 across [1, 1e3]
    for (double x = 0.5; x <= 1000.0; x *= 1.03) {
        double ours = lgamma_pos(x);
        double ref = std::lgamma(x);
        REQUIRE(std::fabs(ours - ref) <= 1e-13 * std::max(1.0, std::fabs(ref)));
    }
    for (double x = 1.0; x <= 1000.0; x += 0.7)
        REQUIRE(std::fabs(lgamma_pos(x) - std::lgamma(x)) <=
                1e-13 * std::max(1.0, std::fabs(std::lgamma(x))));
    // where the exponentiated value is representable tightly, Gamma itself is
    // reproduced to a few 1e-14
    for (double x = 1.0; x <= 30.0; x += 0.1)
        REQUIRE(std::fabs(std::expm1(lgamma_pos(x) - std::lgamma(x))) <= 5e-13);
    CHECK(close(std::exp(lgamma_pos(0.25)), std::exp(std::lgamma(0.25))));
    CHECK_THROWS_AS(lgamma_pos(0.0), std::domain_error);
}

TEST_CASE("unit-ball volumes at the classical bodies") {
    std::vector<double> disk = {2.0, 2.0};
    CHECK(close(log_volume_ball(disk).log_value, std::log(std::numbers::pi)));
    std::vector<double> cross = {1.0, 1.0};
    CHECK(close(log_volume_ball(cross).log_value, std::numbers::ln2));
    std::vector<double> octa = {1.0, 1.0, 1.0};
    CHECK(close(log_volume_ball(octa).log_value, std::log(4.0 / 3.0)));
    CHECK_THROWS_AS(log_volume_ball(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(log_volume_ball(std::vector<double>{1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("volume scaling") {
    std::vector<double> disk = {2.0, 2.0};
    CHECK(log_scaled_volume(disk, 1.0).log_value == log_volume_ball(disk).log_value);
    CHECK(close(log_scaled_volume(disk, 4.0).log_value, std::log(4.0 * std::numbers::pi)));
    CHECK_THROWS_AS(log_scaled_volume(disk, 0.0), std::invalid_argument);

    // area of {|x|^2 + |y|^4 <= 16} by quadrature: x = 4 sin(theta) gives
    // 16 * integral of cos(theta)^{3/2} over [-pi/2, pi/2]
    std::vector<double> body = {2.0, 4.0};
    double area = 16.0 * integrate([](double th) { return std::pow(std::cos(th), 1.5); },
                                   -std::numbers::pi / 2, std::numbers::pi / 2, 1e-12);
    CHECK(close(log_scaled_volume(body, 16.0).log_value, std::log(area), 1e-9));

    // additivity of the scale exponent
    Rng rng(3);
    for (int c = 0; c < 50; ++c) {
        std::vector<double> e = {rng.real(0.3, 3.0), rng.real(0.3, 3.0), rng.real(0.3, 3.0)};
        double t1 = rng.real(0.1, 10.0), t2 = rng.real(0.1, 10.0);
        double once = log_scaled_volume(e, t1 * t2).log_value;
        double chained = log_scaled_volume(e, t1).log_value + (log_scaled_volume(e, t2).log_value -
                                                               log_volume_ball(e).log_value);
        REQUIRE(close(once, chained, 1e-11));
    }
}

TEST_CASE("isotropic volumes agree with the single-exponent formula") {
    Rng rng(41);
    for (int c = 0; c < 100; ++c) {
        int d = static_cast<int>(rng.integer(1, 80));
        double r = rng.real(0.3, 6.0);
        double ours = log_volume_ball(std::vector<double>(static_cast<std::size_t>(d), r)).log_value;
        double ref = d * std::numbers::ln2 + d * std::lgamma(1.0 + 1.0 / r) - std::lgamma(1.0 + d / r);
        REQUIRE(close(ours, ref, 1e-12));
    }
}

TEST_CASE("strong-equivalence constants at worked profiles") {
    for (double s : {0.5, 1.0, 2.0})
        CHECK(close(strong_equiv_constant(make_profile({s})), std::pow(2.0, s)));
    CHECK(close(strong_equiv_constant(make_profile({1.0, 1.0})), std::sqrt(std::numbers::pi)));
    // frozen from an independent log-Gamma evaluation
    CHECK(close(strong_equiv_constant(make_profile({1.0, 2.0})), 2.303495162643663, 1e-13));
}

TEST_CASE("Gamma bracket") {
    auto [l0, u0] = gamma_bracket(0.0);
    CHECK(l0 == 1.0);
    CHECK(u0 == 1.0);
    auto [l1, u1] = gamma_bracket(1.0);
    CHECK(close(l1, 1.0 / std::numbers::e));
    CHECK(close(u1, 2.0));
    auto [l5, u5] = gamma_bracket(5.0);
    CHECK(close(l5, 21.056084372142088));
    CHECK(close(u5, 7776.0));
    CHECK_THROWS_AS(gamma_bracket(-0.1), std::domain_error);

    Rng rng(23);
    for (int c = 0; c < 1000; ++c) {
        double x = rng.real(0.0, 50.0);
        auto [lo, hi] = gamma_bracket(x);
        double g = std::exp(lgamma_pos(1.0 + x));
        REQUIRE(lo <= g);
        REQUIRE(g <= hi);
    }
}

TEST_CASE("volume-constant bracket") {
    SmoothnessProfile p1 = make_profile({1.0});
    auto [lo, hi] = volume_constant_bracket(p1);
    CHECK(close(lo, 0.7003612793137005));
    CHECK(close(hi, 5.711338016744285));
    double sec = strong_equiv_constant(p1);
    CHECK(close(sec, 2.0));
    CHECK(lo <= sec);
    CHECK(sec <= hi);

    for (double s : {0.5, 1.0, 2.0})
        for (int d = 1; d <= 100; ++d) {
            SmoothnessProfile prof = make_profile(std::vector<double>(static_cast<std::size_t>(d), s));
            auto [l, h] = volume_constant_bracket(prof);
            double c = strong_equiv_constant(prof);
            REQUIRE(l <= c);
            REQUIRE(c <= h);
            REQUIRE(l <= h);
        }
}

TEST_CASE("the constant decays like d^{-1/2}") {
    for (double s : {0.5, 1.0, 2.0}) {
        double lo = 1e300, hi = 0.0;
        for (int d = 2; d <= 200; ++d) {
            SmoothnessProfile prof = make_profile(std::vector<double>(static_cast<std::size_t>(d), s));
            double scaled = strong_equiv_constant(prof) * std::sqrt(static_cast<double>(d));
            lo = std::min(lo, scaled);
            hi = std::max(hi, scaled);
        }
        REQUIRE(lo > 0.0);
        REQUIRE(hi / lo < 20.0);
    }
}
