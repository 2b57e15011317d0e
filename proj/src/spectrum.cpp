#include "sobwidth/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sobwidth/lattice.hpp"

namespace sobwidth {
namespace {

constexpr double kBisectTol = 1e-12;     // relative bracket width on the budget
constexpr std::size_t kRefineCap = 4096; // distinct budgets tolerated in the final bracket

bool count_at_least(const mpz_class& c, std::uint64_t n) {
    return mpz_cmp_ui(c.get_mpz_t(), static_cast<unsigned long>(n)) >= 0;
}

SpectrumEntry origin_entry(std::uint64_t n) {
    SpectrumEntry e;
    e.n = n;
    e.value = 1.0;
    e.shell = 0.0;
    e.rank_lo = 1;
    e.rank_hi = 1;
    e.exact = true;
    return e;
}

SpectrumEntry approx_number_int(const SmoothnessProfile& prof, std::uint64_t n) {
    mpz_class hi = 1;
    while (!count_at_least(count_lattice_int_big(prof, hi), n)) {
        if (mpz_sizeinbase(hi.get_mpz_t(), 2) > 119)
            throw std::overflow_error("rank budget exceeds the 128-bit walk range");
        hi <<= 1;
    }
    mpz_class lo = 0;  // count(0) = 1 < n here
    while (hi - lo > 1) {
        mpz_class mid = lo + (hi - lo) / 2;
        if (count_at_least(count_lattice_int_big(prof, mid), n))
            hi = mid;
        else
            lo = mid;
    }
    SpectrumEntry e;
    e.n = n;
    e.shell = budget_as_double(hi);
    e.value = weight_from_budget(e.shell);
    e.exact = true;
    e.rank_hi = count_lattice_int_big(prof, hi);
    e.rank_lo = count_lattice_int_big(prof, hi - 1) + 1;
    return e;
}

SpectrumEntry approx_number_dbl(const SmoothnessProfile& prof, std::uint64_t n) {
    double hi = 1.0;
    while (!count_at_least(count_lattice(prof, hi, false).count, n)) {
        hi *= 2.0;
        if (!(hi < 1e300)) throw std::overflow_error("rank budget exceeds the floating-point range");
    }
    double lo = 0.0;
    while (hi - lo > kBisectTol * std::max(1.0, hi)) {
        double mid = lo + 0.5 * (hi - lo);
        if (count_at_least(count_lattice(prof, mid, false).count, n))
            hi = mid;
        else
            lo = mid;
    }
    SpectrumEntry e;
    e.n = n;
    auto ab = achieved_budgets(prof, lo, hi, kRefineCap);
    if (!ab.truncated) {
        for (double b : ab.values) {
            mpz_class c = count_lattice(prof, b, false).count;
            if (count_at_least(c, n)) {
                e.shell = b;
                e.value = weight_from_budget(b);
                e.exact = true;
                e.rank_hi = c;
                e.rank_lo = count_lattice(prof, b, true).count + 1;
                return e;
            }
        }
    }
    // Either the bracket holds more distinct budgets than the refinement cap
    // or rounding kept the step outside the enumerated window: report the
    // bracket midpoint and the rank range implied by the bracket ends.
    e.shell = lo + 0.5 * (hi - lo);
    e.value = weight_from_budget(e.shell);
    e.exact = false;
    e.rank_lo = count_lattice(prof, lo, false).count + 1;
    e.rank_hi = count_lattice(prof, hi, false).count;
    return e;
}

}  // namespace

SpectrumEntry approx_number(const SmoothnessProfile& prof, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("approx_number: rank must be >= 1");
    if (n == 1) return origin_entry(1);
    return prof.integral_two_r ? approx_number_int(prof, n) : approx_number_dbl(prof, n);
}

std::vector<SpectrumEntry> spectrum_prefix(const SmoothnessProfile& prof, std::uint64_t n_max) {
    if (n_max == 0) throw std::invalid_argument("spectrum_prefix: rank must be >= 1");
    std::vector<SpectrumEntry> out;
    if (n_max == 1) {
        out.push_back(origin_entry(1));
        return out;
    }
    SpectrumEntry tail = approx_number(prof, n_max);
    double hi = tail.exact ? tail.shell : tail.shell * (1.0 + 4 * kBisectTol);

    mpz_class population = count_lattice(prof, hi, false).count;
    mpz_class cap = std::max<unsigned long>(8 * n_max, 10'000'000ul);
    if (population > cap)
        throw std::overflow_error("spectrum_prefix: population exceeds the enumeration guard");

    struct Leaf {
        double s;
        long long si;
        std::uint64_t mult;
    };
    std::vector<Leaf> leaves;
    bool all_int = true;
    for_each_budget(prof, hi, [&](double s, long long si, std::uint64_t mult) {
        leaves.push_back({s, si, mult});
        all_int = all_int && si >= 0;
    });
    if (all_int)
        std::sort(leaves.begin(), leaves.end(), [](const Leaf& a, const Leaf& b) { return a.si < b.si; });
    else
        std::sort(leaves.begin(), leaves.end(), [](const Leaf& a, const Leaf& b) { return a.s < b.s; });

    const double merge_tol = 64 * std::numeric_limits<double>::epsilon();
    mpz_class cum = 0;
    std::size_t i = 0;
    while (i < leaves.size()) {
        std::size_t j = i;
        unsigned long long mult = 0;
        while (j < leaves.size()) {
            bool same = all_int ? leaves[j].si == leaves[i].si
                                : leaves[j].s - leaves[i].s <= merge_tol * std::max(1.0, leaves[j].s);
            if (!same) break;
            mult += leaves[j].mult;
            ++j;
        }
        SpectrumEntry e;
        e.shell = leaves[i].s;
        e.value = weight_from_budget(e.shell);
        e.exact = true;
        e.rank_lo = cum + 1;
        cum += static_cast<unsigned long>(mult);
        e.rank_hi = cum;
        e.n = mpz_get_ui(e.rank_lo.get_mpz_t());
        out.push_back(e);
        if (count_at_least(cum, n_max)) break;
        i = j;
    }
    if (!count_at_least(cum, n_max))
        throw std::runtime_error("spectrum_prefix: enumeration ended before the requested rank");
    return out;
}

mpz_class count_c(const SmoothnessProfile& prof, std::uint64_t m) {
    if (prof.integral_two_r) {
        long long e = std::llround(2.0 * prof.p);
        unsigned __int128 b = 1;
        for (long long i = 0; i < e; ++i) {
            b *= m;
            if (b > (unsigned __int128)(4'000'000'000'000'000'000ULL))
                throw std::overflow_error("count_c: m^{2p} exceeds the exact integer range");
        }
        return count_lattice_int(prof, static_cast<long long>(b));
    }
    return count_lattice(prof, std::pow(static_cast<double>(m), 2.0 * prof.p), false).count;
}

}  // namespace sobwidth
