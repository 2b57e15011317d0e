#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "sobwidth/profile.hpp"

namespace sobwidth {

inline constexpr std::size_t kAchievedBudgetCap = 1'000'000;

struct CountResult {
    mpz_class count;
    double budget = 0.0;
    bool strict = false;
};

/// S(k) = sum_j |k_j|^{2R_j}, in the caller's coordinate order.
double budget(std::span<const long long> k, const SmoothnessProfile& prof);

/// Exact cardinality of {k in Z^d : S(k) <= t} (or < t when strict).
///
/// The recursion branches coordinates in descending-R_j order and walks only
/// k_j >= 0, weighting by the sign symmetry. Shell-boundary comparisons carry
/// a relative slack of 4 ulp so exp/log rounding cannot drop or duplicate
/// boundary points; when every 2R_j is an integer the budgets are tracked as
/// exact integers instead and the count is exact with no slack at all.
CountResult count_lattice(const SmoothnessProfile& prof, double t, bool strict = false);

/// Integer-exponent fast path: exact count of {k : S(k) <= bound} where S is
/// integer-valued. Requires prof.integral_two_r.
mpz_class count_lattice_int(const SmoothnessProfile& prof, long long bound);

/// Same with an arbitrary-precision bound; the walk carries budgets in 128-bit
/// integers, so bounds are capped at 2^120.
mpz_class count_lattice_int_big(const SmoothnessProfile& prof, const mpz_class& bound);

/// The double nearest an exact integer budget, using the same conversion the
/// walk applies to its own accumulators.
double budget_as_double(const mpz_class& budget);

/// Visits every k in Z^d with lo < S(k) <= hi exactly once; order unspecified.
void enumerate_shell(const SmoothnessProfile& prof, double lo, double hi,
                     const std::function<void(std::span<const long long>, double)>& visit);

/// Low-level skeleton walk: every leaf with S <= hi over k_j >= 0, reported as
/// (S, exact integer S or -1, signed-point multiplicity 2^{#nonzero}).
void for_each_budget(const SmoothnessProfile& prof, double hi,
                     const std::function<void(double, long long, std::uint64_t)>& visit);

struct AchievedBudgets {
    std::vector<double> values;  // distinct budgets attained in (lo, hi], ascending
    bool truncated = false;      // true when more than `cap` distinct values exist
};

AchievedBudgets achieved_budgets(const SmoothnessProfile& prof, double lo, double hi,
                                 std::size_t cap = kAchievedBudgetCap);

/// Upper estimate of the recursion's interior node count for a threshold t:
/// the product of per-coordinate ranges excluding the innermost coordinate,
/// which is resolved in O(1). Used by resource guards.
double node_estimate(const SmoothnessProfile& prof, double t);

}  // namespace sobwidth
