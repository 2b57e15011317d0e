#include "sobwidth/verify.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "sobwidth/bignum.hpp"
#include "sobwidth/lattice.hpp"
#include "sobwidth/limitspace.hpp"
#include "sobwidth/oracle.hpp"
#include "sobwidth/profile.hpp"
#include "sobwidth/rng.hpp"
#include "sobwidth/spectrum.hpp"
#include "sobwidth/tractability.hpp"
#include "sobwidth/volumetrics.hpp"
#include "sobwidth/envelopes.hpp"

namespace sobwidth {
namespace {

constexpr int kMaxNotes = 5;

struct Recorder {
    SuiteResult res;
    void fail(const std::string& note) {
        ++res.failures;
        if (static_cast<int>(res.notes.size()) < kMaxNotes) res.notes.push_back(note);
    }
};

// Random profile; every other case snaps to the half-integer grid so the
// exact-count branch is exercised as often as the fractional one.
SmoothnessProfile random_profile(Rng& rng, int d_max, bool snap) {
    int d = static_cast<int>(rng.integer(1, d_max));
    std::vector<double> r(static_cast<std::size_t>(d));
    for (double& x : r) {
        x = rng.real(0.3, 3.0);
        if (snap) x = std::max(0.5, std::round(2.0 * x) / 2.0);
    }
    return make_profile(r);
}

// Largest threshold the rectangle-scan oracle can certify within its point
// guard; shrinks the draw deterministically when the box would be too big.
double feasible_threshold(const SmoothnessProfile& prof, double t) {
    for (;;) {
        double box = 1.0;
        for (int j = 0; j < prof.d; ++j)
            box = std::max(box, std::floor(std::pow(t, 1.0 / prof.two_r(j))) + 1.0);
        if (std::pow(2.0 * box + 3.0, prof.d) <= 5e7 || t < 1e-6) return t;
        t *= 0.4;
    }
}

void suite_oracle(Rng& rng, int cases, Recorder& rec) {
    for (int c = 0; c < cases; ++c) {
        SmoothnessProfile prof = random_profile(rng, 4, c % 2 == 0);
        double t = feasible_threshold(prof, rng.real(0.0, 100.0));
        long long box = 2;
        for (int attempt = 0;; ++attempt) {
            try {
                mpz_class brute = oracle::brute_count(prof, t, box);
                mpz_class fast = count_lattice(prof, t, false).count;
                if (brute != fast) {
                    std::ostringstream os;
                    os << "count mismatch at case " << c << ": brute " << brute.get_str() << " fast "
                       << fast.get_str();
                    rec.fail(os.str());
                }
                break;
            } catch (const oracle::InsufficientBox& e) {
                box = std::max(e.suggested, box + 1);
                if (attempt > 60) {
                    rec.fail("box search diverged at case " + std::to_string(c));
                    break;
                }
            }
        }
    }
}

void suite_sandwich(Rng& rng, int cases, Recorder& rec) {
    for (int c = 0; c < cases; ++c) {
        SmoothnessProfile prof = random_profile(rng, 3, c % 2 == 0);
        for (std::uint64_t m = 1; m <= 30; ++m) {
            if (node_estimate(prof, std::pow(static_cast<double>(m), 2.0 * prof.p)) > 2e6) break;
            CountingSandwich s = counting_sandwich(prof, m);
            double mid = mpz_get_d(s.exact.get_mpz_t());
            // the bounds are attained (d = 1 gives A = C exactly), so compare
            // real-valued ends with a 1e-9 relative slack
            if (!(s.lower <= mid * (1 + 1e-9) && mid <= s.upper * (1 + 1e-9))) {
                std::ostringstream os;
                os << "sandwich violated at case " << c << " m " << m << ": " << s.lower << " / " << mid
                   << " / " << s.upper;
                rec.fail(os.str());
            }
        }
    }
}

void suite_bracket(Rng& rng, int cases, Recorder& rec) {
    for (int c = 0; c < cases; ++c) {
        SmoothnessProfile prof = random_profile(rng, 200, false);
        auto [lo, hi] = volume_constant_bracket(prof);
        double sec = strong_equiv_constant(prof);
        if (!(lo <= sec && sec <= hi)) {
            std::ostringstream os;
            os << "volume-constant bracket violated at case " << c << ": " << lo << " / " << sec << " / "
               << hi;
            rec.fail(os.str());
        }
    }
}

void suite_gamma(Rng& rng, int cases, Recorder& rec) {
    for (int c = 0; c < cases; ++c) {
        double x = rng.real(0.0, 50.0);
        auto [lo, hi] = gamma_bracket(x);
        double gx = std::exp(lgamma_pos(1.0 + x));
        if (!(lo <= gx && gx <= hi)) {
            std::ostringstream os;
            os << "gamma bracket violated at x = " << x << ": " << lo << " / " << gx << " / " << hi;
            rec.fail(os.str());
        }
    }
}

void suite_quasi_triangle(Rng& rng, int cases, Recorder& rec) {
    for (int c = 0; c < cases; ++c) {
        SmoothnessProfile prof = random_profile(rng, 8, false);
        std::vector<double> x(static_cast<std::size_t>(prof.d)), y(x.size()), z(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) {
            x[j] = rng.real(-10.0, 10.0);
            y[j] = rng.real(-10.0, 10.0);
            z[j] = x[j] + y[j];
        }
        double qx = quasi_norm(x, prof), qy = quasi_norm(y, prof), qz = quasi_norm(z, prof);
        double slack = 1e-12 * std::max(1.0, qx + qy);
        if (!(qz <= qx + qy + slack)) {
            std::ostringstream os;
            os << "quasi-triangle violated at case " << c << ": " << qz << " > " << qx << " + " << qy;
            rec.fail(os.str());
        }
    }
}

void suite_limit(Rng& rng, int cases, Recorder& rec) {
    for (int c = 0; c < cases; ++c) {
        int d = static_cast<int>(rng.integer(1, 7));
        std::vector<double> brute = oracle::brute_limit_spectrum(d);
        mpz_class dim = limit_dim(d);
        for (std::size_t i = 0; i < brute.size(); ++i) {
            double a = limit_approx_number(d, mpz_class(static_cast<unsigned long>(i + 1)));
            if (a != brute[i]) {
                rec.fail("limit spectrum mismatch at d " + std::to_string(d) + " n " + std::to_string(i + 1));
                break;
            }
        }
        if (limit_approx_number(d, dim + 1) != 0.0) rec.fail("nonzero weight past 3^d at d " + std::to_string(d));
        // bracket containment at a random admissible rank; d = 2 has no ranks
        // past shell 2, so the window starts at d = 3
        int db = static_cast<int>(rng.integer(3, 12));
        mpz_class c2 = limit_count(db, 2).cumulative;
        mpz_class span = limit_dim(db) - c2;
        mpz_class n = c2 + 1 + mpz_class(static_cast<unsigned long>(rng.integer(0, 1 << 20))) % span;
        auto [mlo, mhi] = limit_preasymptotic_bracket(db, n);
        int m = limit_shell_index(db, n);
        if (!(mlo <= m && m <= mhi)) {
            std::ostringstream os;
            os << "shell bracket violated at d " << db << " n " << n.get_str() << ": " << mlo << " / " << m
               << " / " << mhi;
            rec.fail(os.str());
        }
    }
}

struct SuiteSpec {
    const char* name;
    int default_cases;
    void (*run)(Rng&, int, Recorder&);
};

const SuiteSpec kSuites[] = {
    {"oracle", 200, suite_oracle},
    {"sandwich", 100, suite_sandwich},
    {"bracket", 1000, suite_bracket},
    {"gamma", 1000, suite_gamma},
    {"quasi-triangle", 10000, suite_quasi_triangle},
    {"limit", 50, suite_limit},
};

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& s : kSuites) names.emplace_back(s.name);
    return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, int cases) {
    for (const auto& s : kSuites) {
        if (name == s.name) {
            Recorder rec;
            rec.res.suite = name;
            rec.res.seed = seed;
            rec.res.cases = cases > 0 ? cases : s.default_cases;
            Rng rng(seed);
            s.run(rng, rec.res.cases, rec);
            return rec.res;
        }
    }
    throw std::invalid_argument("unknown verification suite: " + name);
}

}  // namespace sobwidth
