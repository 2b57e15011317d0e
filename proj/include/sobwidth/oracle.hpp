#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "sobwidth/profile.hpp"

namespace sobwidth::oracle {

/// Thrown when the requested box provably cannot certify the result; carries
/// the smallest box the oracle believes would.
struct InsufficientBox : std::runtime_error {
    long long suggested;
    InsufficientBox(const std::string& what, long long box)
        : std::runtime_error(what), suggested(box) {}
};

/// First n_max budgets of the rearrangement, ascending, from a full rectangle
/// scan of [-box, box]^d. Asserts its own sufficiency: the n_max-th budget
/// must beat the cheapest budget outside the box.
std::vector<double> brute_budget_spectrum(const SmoothnessProfile& prof, std::uint64_t n_max,
                                          long long box);

/// First n_max approximation numbers, nonincreasing.
std::vector<double> brute_spectrum(const SmoothnessProfile& prof, std::uint64_t n_max,
                                   long long box);

/// #{k in [-box,box]^d : S(k) <= t}; rejects boxes that cannot contain every
/// admissible point.
mpz_class brute_count(const SmoothnessProfile& prof, double t, long long box);

/// The full limit-space spectrum for d <= 7: all 3^d weights, nonincreasing.
std::vector<double> brute_limit_spectrum(int d);

}  // namespace sobwidth::oracle
