#include "sobwidth/tractability.hpp"

#include <cmath>
#include <stdexcept>

#include "sobwidth/bignum.hpp"
#include "sobwidth/lattice.hpp"
#include "sobwidth/limitspace.hpp"

namespace sobwidth {
namespace {

void check_eps(double eps) {
    if (!std::isfinite(eps) || !(eps > 0.0) || eps > 1.0)
        throw std::domain_error("eps must lie in (0, 1]");
}

}  // namespace

mpz_class info_complexity(const SmoothnessProfile& prof, double eps) {
    check_eps(eps);
    double t = 1.0 / (eps * eps) - 1.0;
    if (t <= 0.0) return 0;
    return count_lattice(prof, t, true).count;
}

mpz_class limit_info_complexity(int d, double eps) {
    check_eps(eps);
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    // largest shell whose weight still exceeds eps
    int m = -1;
    while (m < d && 1.0 / std::sqrt(2.0 + m) > eps) ++m;
    if (m < 0) return 0;
    return limit_count(d, m).cumulative;
}

double wt_ratio(const mpz_class& n_eps, double eps, int d, double alpha, double beta) {
    if (n_eps < 0) throw std::invalid_argument("n_eps must be nonnegative");
    if (!(alpha > 0.0) || !(beta > 0.0)) throw std::invalid_argument("alpha and beta must be positive");
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    check_eps(eps);
    double num = n_eps <= 1 ? 0.0 : ln_mpz(n_eps);
    return num / (std::pow(1.0 / eps, alpha) + std::pow(static_cast<double>(d), beta));
}

TractabilityReport make_report(const SmoothnessProfile& prof, double eps, double alpha, double beta) {
    TractabilityReport rep;
    rep.space = ProblemSpace::kAnisotropic;
    rep.eps = eps;
    rep.d = prof.d;
    rep.alpha = alpha;
    rep.beta = beta;
    rep.n_eps = info_complexity(prof, eps);
    rep.ratio = wt_ratio(rep.n_eps, eps, prof.d, alpha, beta);
    return rep;
}

TractabilityReport make_limit_report(int d, double eps, double alpha, double beta) {
    TractabilityReport rep;
    rep.space = ProblemSpace::kLimit;
    rep.eps = eps;
    rep.d = d;
    rep.alpha = alpha;
    rep.beta = beta;
    rep.n_eps = limit_info_complexity(d, eps);
    rep.ratio = wt_ratio(rep.n_eps, eps, d, alpha, beta);
    return rep;
}

bool curse_witness(int d, double gamma) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    mpz_class n = limit_info_complexity(d, limit_witness_eps(d));
    double base = 1.0 + gamma;
    if (base == std::floor(base)) {
        mpz_class rhs;
        mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(d));
        return n >= rhs;
    }
    return ln_mpz(n) >= d * std::log(base);
}

}  // namespace sobwidth
