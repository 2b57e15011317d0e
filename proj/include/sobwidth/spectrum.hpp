#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "sobwidth/profile.hpp"

namespace sobwidth {

/// One resolved point of the nonincreasing weight rearrangement: a_n together
/// with the shell (achieved budget s, a_n = (1+s)^{-1/2}) and the rank range
/// of every index sharing that shell.
struct SpectrumEntry {
    std::uint64_t n = 0;
    double value = 0.0;
    double shell = 0.0;
    mpz_class rank_lo;
    mpz_class rank_hi;
    bool exact = true;
};

/// Canonical weight transform (1+s)^{-1/2}.
inline double weight_from_budget(double s) { return std::sqrt(1.0 / (1.0 + s)); }

/// a_n via binary search on the counting oracle: the n-th smallest achieved
/// budget s* is the least t with count_lattice(t) >= n; ties resolve to whole
/// shells, so no comparison sort is ever needed.
SpectrumEntry approx_number(const SmoothnessProfile& prof, std::uint64_t n);

/// All shells covering ranks 1..n_max, values strictly decreasing. The last
/// entry's rank range may extend past n_max.
std::vector<SpectrumEntry> spectrum_prefix(const SmoothnessProfile& prof, std::uint64_t n_max);

/// C(m,R,d): exact cardinality of {k : S(k) <= m^{2p}}.
mpz_class count_c(const SmoothnessProfile& prof, std::uint64_t m);

}  // namespace sobwidth
