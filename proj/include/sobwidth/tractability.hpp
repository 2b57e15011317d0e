#pragma once

#include <cmath>

#include <gmpxx.h>

#include "sobwidth/profile.hpp"

namespace sobwidth {

enum class ProblemSpace { kAnisotropic, kLimit };

struct TractabilityReport {
    double eps = 0.0;
    int d = 0;
    mpz_class n_eps;
    double alpha = 0.0;
    double beta = 0.0;
    double ratio = 0.0;
    ProblemSpace space = ProblemSpace::kLimit;
};

/// n(eps,d) for the anisotropic space: the exact number of weights strictly
/// above eps, obtained from one strict count at budget eps^{-2} - 1. No search
/// over n, and ties a_n = eps resolve the way the min-definition demands.
mpz_class info_complexity(const SmoothnessProfile& prof, double eps);

/// n(eps,d) for the limit space via the C(m,d) staircase; capped at 3^d.
mpz_class limit_info_complexity(int d, double eps);

/// ln(max(n_eps,1)) / (eps^{-alpha} + d^beta).
double wt_ratio(const mpz_class& n_eps, double eps, int d, double alpha, double beta);

/// Full diagnostics for one (eps, d, alpha, beta) query on either space.
TractabilityReport make_report(const SmoothnessProfile& prof, double eps, double alpha, double beta);
TractabilityReport make_limit_report(int d, double eps, double alpha, double beta);

/// The witness threshold of the no-curse argument.
inline double limit_witness_eps(int d) { return 1.0 / std::sqrt(2.0 + d); }

/// Whether n(eps_d, d) >= (1+gamma)^d along eps_d = (2+d)^{-1/2}; true exactly
/// for gamma <= 2.
bool curse_witness(int d, double gamma);

}  // namespace sobwidth
