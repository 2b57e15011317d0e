#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include <gmpxx.h>

#include "sobwidth/profile.hpp"

namespace sobwidth {

enum class Regime { kSmall, kPreasymptotic, kAsymptotic };

const char* to_string(Regime r);

/// Theoretical envelope on a_n at one (d, n). `comparison` is the bare decay
/// shape with implicit constants; lower/upper carry the explicit constants
/// where they exist. The upper constant circulates in two variants differing
/// by a (1 + (2v+1)/(2v)) vs ((2v+1)/(2v)) factor; `upper` is the larger
/// (a fortiori valid) one and `upper_tight` the smaller, reported side by
/// side rather than silently merged.
struct Envelope {
    Regime regime = Regime::kSmall;
    double comparison = 0.0;
    std::optional<double> lower;
    std::optional<double> upper;
    std::optional<double> upper_tight;
    bool guaranteed = false;  // true only in the asymptotic window ln n > d ln E
};

/// (log2(1 + d/log2 n) / log2 n)^{1/2}; the middle-regime comparison value.
double preasymptotic_value(int d, std::uint64_t n);

/// Explicit-constant bounds lower <= a_n <= upper, guaranteed once ln n > d ln E.
Envelope asymptotic_envelope(const SmoothnessProfile& prof, std::uint64_t n);

/// Classifies n against d and 3^d and fills the branch's comparison value;
/// the asymptotic branch also carries the explicit constants.
Envelope piecewise_envelope(const SmoothnessProfile& prof, std::uint64_t n);

/// B(m,R,d) <= C(m,R,d) <= A(m,R,d): volume bounds around the exact count,
/// B = (m-b_R)_+^{p/g} vol(B_2R), A = (m+b_R)^{p/g} vol(B_2R).
struct CountingSandwich {
    double lower = 0.0;
    mpz_class exact;
    double upper = 0.0;
};
CountingSandwich counting_sandwich(const SmoothnessProfile& prof, std::uint64_t m);

/// Two-sided bracket on n^g a_n from the counting step the rank n falls in;
/// both ends converge to strong_equiv_constant as n grows.
std::pair<double, double> strong_equiv_bracket(const SmoothnessProfile& prof, std::uint64_t n);

}  // namespace sobwidth
