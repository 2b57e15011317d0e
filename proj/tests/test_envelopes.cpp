#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sobwidth/envelopes.hpp"
#include "sobwidth/lattice.hpp"
#include "sobwidth/profile.hpp"
#include "sobwidth/rng.hpp"
#include "sobwidth/spectrum.hpp"
#include "sobwidth/volumetrics.hpp"

using namespace sobwidth;

namespace {

bool close(double a, double b, double rel = 1e-12) {
    return std::fabs(a - b) <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace

TEST_CASE("preasymptotic comparison value") {
    for (int d = 2; d <= 10; ++d)
        CHECK(close(preasymptotic_value(d, std::uint64_t(1) << d), 1.0 / std::sqrt(static_cast<double>(d))));
    CHECK(close(preasymptotic_value(4, 4), 0.8902141598292953));
    double prev = 10.0;
    for (std::uint64_t n = 2; n < 4000; n += 37) {
        double v = preasymptotic_value(6, n);
        REQUIRE(v < prev);
        prev = v;
    }
    CHECK_THROWS_AS(preasymptotic_value(4, 1), std::domain_error);
}

TEST_CASE("asymptotic envelope constants and guarantee window") {
    SmoothnessProfile p12 = make_profile({1.0, 2.0});
    Envelope a = asymptotic_envelope(p12, 1000);
    Envelope b = asymptotic_envelope(p12, 100000);
    REQUIRE(a.lower);
    REQUIRE(a.upper);
    REQUIRE(a.upper_tight);
    CHECK(close(*a.upper / *a.lower, *b.upper / *b.lower));
    CHECK(*a.upper_tight < *a.upper);
    CHECK(*a.lower <= *a.upper_tight);

    // E(1,2) ~ 316.55, so the guarantee opens just past n = 100206.74
    CHECK_FALSE(asymptotic_envelope(p12, 100206).guaranteed);
    CHECK(asymptotic_envelope(p12, 100207).guaranteed);

    SmoothnessProfile p11 = make_profile({1.0, 1.0});
    CHECK_FALSE(asymptotic_envelope(p11, 521).guaranteed);
    CHECK(asymptotic_envelope(p11, 522).guaranteed);
}

TEST_CASE("guaranteed window contains the spectrum at a deep rank") {
    SmoothnessProfile p11 = make_profile({1.0, 1.0});
    SpectrumEntry e = approx_number(p11, 1000000);
    Envelope env = asymptotic_envelope(p11, 1000000);
    REQUIRE(env.guaranteed);
    REQUIRE(*env.lower <= e.value);
    REQUIRE(e.value <= *env.upper);
    REQUIRE(e.value <= *env.upper_tight);  // the tighter constant holds here too
}

TEST_CASE("piecewise classification") {
    SmoothnessProfile p = make_profile({1.0, 1.0, 1.0});
    Envelope small = piecewise_envelope(p, 1);
    CHECK(small.regime == Regime::kSmall);
    CHECK(small.comparison == 1.0);
    CHECK_FALSE(small.lower);
    CHECK_FALSE(small.guaranteed);

    Envelope mid = piecewise_envelope(p, 20);
    CHECK(mid.regime == Regime::kPreasymptotic);
    CHECK(mid.comparison == preasymptotic_value(3, 20));

    Envelope deep = piecewise_envelope(p, 28);  // 3^3 = 27
    CHECK(deep.regime == Regime::kAsymptotic);
    CHECK(deep.comparison ==
          std::pow(28.0, -p.g) / std::sqrt(3.0));

    SmoothnessProfile p8 = make_profile(std::vector<double>(8, 1.0));
    Envelope e8 = piecewise_envelope(p8, 100);
    CHECK(e8.regime == Regime::kPreasymptotic);
    CHECK(close(e8.comparison, preasymptotic_value(8, 100)));
}

TEST_CASE("branch values agree at the 3^d boundary up to a flat factor") {
    for (int d = 2; d <= 12; ++d) {
        SmoothnessProfile prof = make_profile(std::vector<double>(static_cast<std::size_t>(d), 1.0));
        std::uint64_t n = 1;
        for (int i = 0; i < d; ++i) n *= 3;
        double pre = preasymptotic_value(d, n);
        double asym = std::pow(static_cast<double>(n), -prof.g) / std::sqrt(static_cast<double>(d));
        double ratio = pre / asym;
        REQUIRE(ratio > 1.8);
        REQUIRE(ratio < 2.2);
    }
}

TEST_CASE("counting sandwich at the worked point and on seeded sweeps") {
    SmoothnessProfile p11 = make_profile({1.0, 1.0});
    CountingSandwich s = counting_sandwich(p11, 1);
    CHECK(close(s.lower, 0.2695060422263235, 1e-12));
    CHECK(s.exact == 5);
    CHECK(close(s.upper, 9.155271918543056, 1e-12));

    // m below the shell offset gives the zero lower bound
    SmoothnessProfile wide = make_profile(std::vector<double>(40, 0.3));
    CountingSandwich z = counting_sandwich(wide, 1);
    CHECK(z.lower == 0.0);
    CHECK(z.exact >= 1);

    Rng rng(15);
    for (int c = 0; c < 30; ++c) {
        int d = static_cast<int>(rng.integer(1, 3));
        std::vector<double> r(static_cast<std::size_t>(d));
        for (double& x : r) x = rng.real(0.3, 3.0);
        SmoothnessProfile prof = make_profile(r);
        for (std::uint64_t m = 1; m <= 30; ++m) {
            if (node_estimate(prof, std::pow(static_cast<double>(m), 2.0 * prof.p)) > 1e6) break;
            CountingSandwich cs = counting_sandwich(prof, m);
            double mid = mpz_get_d(cs.exact.get_mpz_t());
            REQUIRE(cs.lower <= mid * (1 + 1e-12));
            REQUIRE(mid <= cs.upper * (1 + 1e-12));
        }
    }
    CHECK_THROWS_AS(counting_sandwich(p11, 0), std::invalid_argument);
}

TEST_CASE("strong-equivalence bracket captures n^g a_n and tightens") {
    SmoothnessProfile p12 = make_profile({1.0, 2.0});
    double widths[3];
    int wi = 0;
    for (std::uint64_t n : {100, 1000, 10000}) {
        SpectrumEntry e = approx_number(p12, n);
        double ngan = std::pow(static_cast<double>(n), p12.g) * e.value;
        auto [lo, hi] = strong_equiv_bracket(p12, n);
        REQUIRE(lo < ngan);
        REQUIRE(ngan <= hi * (1 + 1e-12));
        widths[wi++] = hi - lo;
    }
    CHECK(widths[1] < widths[0]);
    CHECK(widths[2] < widths[1]);

    // both ends settle on the limit constant
    SmoothnessProfile p1 = make_profile({1.0});
    auto [lo6, hi6] = strong_equiv_bracket(p1, 1000000);
    CHECK(close(lo6, 2.0, 5e-3));
    CHECK(close(hi6, 2.0, 5e-3));
    CHECK(lo6 <= 2.0);
    CHECK(2.0 <= hi6);

    CHECK_THROWS_AS(strong_equiv_bracket(p12, 1), std::domain_error);
}
