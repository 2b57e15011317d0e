#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "sobwidth/lattice.hpp"
#include "sobwidth/oracle.hpp"
#include "sobwidth/profile.hpp"
#include "sobwidth/rng.hpp"
#include "sobwidth/spectrum.hpp"

using namespace sobwidth;

namespace {

// Test-side isotropic spectrum for d <= 3 from sorted magnitude tuples;
// returns (budget, multiplicity) shells sorted by budget.
std::vector<std::pair<double, long long>> isotropic_shells(int d, double s, double t_max) {
    double ts = 2.0 * s;
    auto term = [&](long long a) { return a == 0 ? 0.0 : std::pow(static_cast<double>(a), ts); };
    long long amax = static_cast<long long>(std::floor(std::pow(t_max + 1.0, 1.0 / ts))) + 2;
    std::map<double, long long> shells;
    auto add = [&](double b, long long mult) {
        if (b <= t_max) shells[b] += mult;
    };
    if (d == 1) {
        for (long long a = 0; a <= amax; ++a) add(term(a), a ? 2 : 1);
    } else if (d == 2) {
        for (long long a = 0; a <= amax; ++a)
            for (long long b = a; b <= amax; ++b) {
                double v = term(a) + term(b);
                if (v > t_max) break;
                add(v, (1LL << ((a != 0) + (b != 0))) * (a == b ? 1 : 2));
            }
    } else {
        for (long long a = 0; a <= amax; ++a)
            for (long long b = a; b <= amax; ++b)
                for (long long c = b; c <= amax; ++c) {
                    double v = term(a) + term(b) + term(c);
                    if (v > t_max) break;
                    long long perms = (a == b && b == c) ? 1 : (a == b || b == c) ? 3 : 6;
                    add(v, (1LL << ((a != 0) + (b != 0) + (c != 0))) * perms);
                }
    }
    return {shells.begin(), shells.end()};
}

}  // namespace

TEST_CASE("rank one is the origin with weight 1") {
    for (auto r : {std::vector<double>{1.0}, {0.7, 2.2}, {1.0, 2.0, 3.0}}) {
        SpectrumEntry e = approx_number(make_profile(r), 1);
        CHECK(e.value == 1.0);
        CHECK(e.shell == 0.0);
        CHECK(e.rank_lo == 1);
        CHECK(e.rank_hi == 1);
        CHECK(e.exact);
    }
    CHECK_THROWS_AS(approx_number(make_profile({1.0}), 0), std::invalid_argument);
}

TEST_CASE("worked ranks") {
    SpectrumEntry e = approx_number(make_profile({1.0}), 2);
    CHECK(e.value == weight_from_budget(1.0));
    CHECK(e.shell == 1.0);
    CHECK(e.rank_lo == 2);
    CHECK(e.rank_hi == 3);

    SpectrumEntry f = approx_number(make_profile({1.0, 1.0}), 6);
    CHECK(f.value == weight_from_budget(2.0));
    CHECK(f.shell == 2.0);
    CHECK(f.rank_lo == 6);
    CHECK(f.rank_hi == 9);
}

TEST_CASE("prefix covers consecutive shells") {
    auto shells = spectrum_prefix(make_profile({1.0}), 5);
    REQUIRE(shells.size() == 3);
    CHECK(shells[0].shell == 0.0);
    CHECK(shells[0].rank_lo == 1);
    CHECK(shells[0].rank_hi == 1);
    CHECK(shells[1].shell == 1.0);
    CHECK(shells[1].rank_lo == 2);
    CHECK(shells[1].rank_hi == 3);
    CHECK(shells[2].shell == 4.0);
    CHECK(shells[2].rank_lo == 4);
    CHECK(shells[2].rank_hi == 5);
    CHECK(shells[0].value == 1.0);
    CHECK(shells[1].value == weight_from_budget(1.0));
    CHECK(shells[2].value == weight_from_budget(4.0));

    auto one = spectrum_prefix(make_profile({0.9, 1.7}), 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].value == 1.0);

    auto nine = spectrum_prefix(make_profile({1.0, 1.0}), 9);
    REQUIRE(nine.size() == 3);
    CHECK(nine[1].rank_hi - nine[1].rank_lo + 1 == 4);
    CHECK(nine[2].rank_hi - nine[2].rank_lo + 1 == 4);
}

TEST_CASE("counting function C(m, R, d)") {
    CHECK(count_c(make_profile({0.4, 1.3}), 0) == 1);
    CHECK(count_c(make_profile({1.0, 1.0}), 1) == 5);
    CHECK(count_c(make_profile({1.0, 2.0}), 1) == 5);
    // d = 2, R = (1,1): C(m) counts |k1|^2 + |k2|^2 <= m^2
    CHECK(count_c(make_profile({1.0, 1.0}), 2) == 13);
}

TEST_CASE("values are nonincreasing and step-bracketed") {
    Rng rng(2024);
    int profiles_done = 0;
    while (profiles_done < 100) {
        int d = static_cast<int>(rng.integer(1, 3));
        std::vector<double> r(static_cast<std::size_t>(d));
        for (double& x : r) {
            x = rng.real(0.3, 3.0);
            if (profiles_done % 2 == 0) x = std::max(0.5, std::round(2.0 * x) / 2.0);
        }
        SmoothnessProfile prof = make_profile(r);
        ++profiles_done;
        for (std::uint64_t m = 1; m <= 20; ++m) {
            double t = std::pow(static_cast<double>(m), 2.0 * prof.p);
            if (node_estimate(prof, t) > 2e6) break;  // extreme anisotropy: cost, not math
            mpz_class c_prev = count_c(prof, m - 1);
            mpz_class c_m = count_c(prof, m);
            REQUIRE(c_prev < c_m);
            double lo_val = weight_from_budget(t);
            double hi_val = weight_from_budget(std::pow(static_cast<double>(m - 1), 2.0 * prof.p));
            for (mpz_class n : std::vector<mpz_class>{mpz_class(c_prev + 1), c_m}) {
                SpectrumEntry e = approx_number(prof, mpz_get_ui(n.get_mpz_t()));
                REQUIRE(e.value >= lo_val * (1 - 1e-9));
                REQUIRE(e.value <= hi_val * (1 + 1e-9));
            }
        }
    }
}

TEST_CASE("matches the brute-force rearrangement on seeded profiles") {
    Rng rng(808);
    for (int c = 0; c < 12; ++c) {
        int d = static_cast<int>(rng.integer(1, 4));
        std::vector<double> r(static_cast<std::size_t>(d));
        for (double& x : r) {
            x = rng.real(0.3, 3.0);
            if (c % 2 == 0) x = std::max(0.5, std::round(2.0 * x) / 2.0);
        }
        SmoothnessProfile prof = make_profile(r);
        const std::uint64_t n_max = 400;
        long long box = 4;
        std::vector<double> brute;
        for (int attempt = 0;; ++attempt) {
            REQUIRE(attempt < 64);
            try {
                brute = oracle::brute_budget_spectrum(prof, n_max, box);
            } catch (const oracle::InsufficientBox& e) {
                box = std::max(e.suggested, box + 1);
                continue;
            }
            break;
        }
        auto shells = spectrum_prefix(prof, n_max);
        std::size_t si = 0;
        for (std::uint64_t n = 1; n <= n_max; ++n) {
            while (shells[si].rank_hi < static_cast<unsigned long>(n)) ++si;
            double fast_budget = shells[si].shell;
            double brute_budget = brute[n - 1];
            if (prof.integral_two_r)
                REQUIRE(fast_budget == brute_budget);
            else
                REQUIRE(std::fabs(fast_budget - brute_budget) <= 1e-9 * std::max(1.0, brute_budget));
        }
        // spot-check the binary search against the same shells
        for (int probe = 0; probe < 8; ++probe) {
            std::uint64_t n = static_cast<std::uint64_t>(rng.integer(1, static_cast<long long>(n_max)));
            SpectrumEntry e = approx_number(prof, n);
            REQUIRE(std::fabs(e.shell - brute[n - 1]) <= 1e-9 * std::max(1.0, brute[n - 1]));
            mpz_class rank(static_cast<unsigned long>(n));
            REQUIRE(e.rank_lo <= rank);
            REQUIRE(rank <= e.rank_hi);
        }
    }
}

TEST_CASE("isotropic spectra match the combinatorial shells") {
    Rng rng(606);
    for (int c = 0; c < 10; ++c) {
        int d = static_cast<int>(rng.integer(1, 3));
        double s = rng.real(0.3, 3.0);
        SmoothnessProfile prof = make_profile(std::vector<double>(static_cast<std::size_t>(d), s));
        auto fast = spectrum_prefix(prof, 300);
        auto combinatorial = isotropic_shells(d, s, fast.back().shell * (1 + 1e-9));
        REQUIRE(combinatorial.size() >= fast.size());
        mpz_class cum = 0;
        for (std::size_t i = 0; i < fast.size(); ++i) {
            REQUIRE(std::fabs(fast[i].shell - combinatorial[i].first) <=
                    1e-9 * std::max(1.0, combinatorial[i].first));
            REQUIRE(fast[i].rank_lo == cum + 1);
            cum += static_cast<unsigned long>(combinatorial[i].second);
            REQUIRE(fast[i].rank_hi == cum);
        }
    }
}

TEST_CASE("deep integral ranks resolve in seconds") {
    auto t0 = std::chrono::steady_clock::now();
    SpectrumEntry e = approx_number(make_profile({1.0, 2.0}), 1000000);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(e.exact);
    CHECK(e.shell == 18861665.0);
    CHECK(e.rank_lo <= 1000000);
    CHECK(e.rank_hi == 1000001);
    CHECK(secs < 10.0);
}

TEST_CASE("prefix values decrease strictly across shells") {
    auto shells = spectrum_prefix(make_profile({0.6, 1.9}), 500);
    for (std::size_t i = 1; i < shells.size(); ++i) {
        REQUIRE(shells[i].value < shells[i - 1].value);
        REQUIRE(shells[i].rank_lo == shells[i - 1].rank_hi + 1);
    }
}
