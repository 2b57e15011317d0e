#include "sobwidth/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sobwidth {
namespace {

using i128 = __int128;

constexpr double kSlack = 4 * std::numeric_limits<double>::epsilon();
// Distinct-budget merge window for fractional exponents; branch-order rounding
// perturbs a shell's budget by a few ulp only.
constexpr double kMergeTol = 64 * std::numeric_limits<double>::epsilon();
constexpr std::size_t kLeafGuard = 50'000'000;

const i128 kTermCap = i128(1) << 120;

// k^e, or -1 once the power exceeds 2^120 (and therefore any admissible budget).
i128 ipow_capped(long long k, long long e) {
    i128 r = 1;
    for (long long i = 0; i < e; ++i) {
        if (k > 1 && r > kTermCap / k) return -1;
        r *= k;
    }
    return r;
}

i128 mpz_to_i128(const mpz_class& z) {
    unsigned long long limbs[2] = {0, 0};
    std::size_t n = 0;
    if (mpz_sgn(z.get_mpz_t()) != 0)
        mpz_export(limbs, &n, -1, sizeof(unsigned long long), 0, 0, z.get_mpz_t());
    return (i128(limbs[1]) << 64) | i128(limbs[0]);
}

constexpr long long kTermCacheMax = 1 << 16;

// k^{2R} for k >= 0 through std::pow, which is correctly rounded; the 4 ulp
// boundary slack cannot absorb the drift of an exp(log) evaluation, and shell
// thresholds like m^{2p} must land on the same double as the matching term.
double pow_term(long long k, double two_r) {
    if (k == 0) return 0.0;
    if (k == 1) return 1.0;
    return std::pow(static_cast<double>(k), two_r);
}

struct Axis {
    double two_r = 0.0;
    long long e = -1;  // integral value of 2R_j, -1 on the fractional path
    int source = 0;    // position in the caller's coordinate order
    std::vector<double> terms;
    std::vector<i128> iterms;  // -1 marks overflow beyond 2^120

    double term(long long k) {
        if (k >= kTermCacheMax) return pow_term(k, two_r);
        while (static_cast<long long>(terms.size()) <= k)
            terms.push_back(pow_term(static_cast<long long>(terms.size()), two_r));
        return terms[static_cast<std::size_t>(k)];
    }
    i128 iterm(long long k) {
        if (k >= kTermCacheMax) return ipow_capped(k, e);
        while (static_cast<long long>(iterms.size()) <= k)
            iterms.push_back(ipow_capped(static_cast<long long>(iterms.size()), e));
        return iterms[static_cast<std::size_t>(k)];
    }
};

struct Walker {
    std::vector<Axis> axes;
    bool integral = false;
    bool strict = false;
    double limit = 0.0;  // slack-adjusted threshold, double path
    i128 ibound = -1;    // inclusive budget bound, integer path
    std::size_t leaves = 0;

    bool admit(double s) const { return strict ? s < limit : s <= limit; }
    void tick() {
        if (++leaves > kLeafGuard)
            throw std::overflow_error("lattice walk exceeds the enumeration guard");
    }
};

Walker make_walker(const SmoothnessProfile& prof) {
    Walker w;
    w.integral = prof.integral_two_r;
    std::vector<int> order(static_cast<std::size_t>(prof.d));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return prof.two_r(a) > prof.two_r(b); });
    w.axes.resize(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        Axis& ax = w.axes[i];
        ax.two_r = prof.two_r(order[i]);
        ax.source = order[i];
        if (w.integral) ax.e = std::llround(ax.two_r);
    }
    return w;
}

// Converts a real threshold into the slack-adjusted comparison limits. On the
// integer path: admit S <= ibound.
void set_threshold(Walker& w, double t, bool strict) {
    w.strict = strict;
    w.limit = strict ? t * (1.0 - kSlack) : t * (1.0 + kSlack);
    if (!w.integral) return;
    double ta = w.limit;
    if (ta < 0.0) {
        w.ibound = -1;
        return;
    }
    if (ta > 8.0e37) throw std::overflow_error("budget threshold too large for exact integer counting");
    i128 b;
    if (ta < 9.0e18) {
        b = static_cast<long long>(std::floor(ta));
    } else {
        b = mpz_to_i128(mpz_class(std::floor(ta)));  // doubles that large are integers
    }
    if (strict && static_cast<double>(b) == ta) --b;
    w.ibound = b;
}

constexpr long long kRangeGuard = 4'000'000'000'000'000'000LL;

long long kmax_int(Axis& ax, i128 rem) {
    if (ax.e == 1) {
        if (rem > i128(kRangeGuard)) throw std::overflow_error("per-coordinate range exceeds the 64-bit guard");
        return static_cast<long long>(rem);
    }
    double guess = rem > 0 ? std::floor(std::pow(static_cast<double>(rem), 1.0 / static_cast<double>(ax.e))) : 0.0;
    long long k = guess > 0 ? static_cast<long long>(guess) : 0;
    while (true) {
        i128 t = ax.iterm(k + 1);
        if (t < 0 || t > rem) break;
        ++k;
    }
    while (k >= 0) {
        i128 t = ax.iterm(k);
        if (t >= 0 && t <= rem) break;
        --k;
    }
    return k;
}

long long kmax_dbl(Walker& w, Axis& ax, double acc) {
    double rem = w.limit - acc;
    double guess = rem > 1.0 ? std::floor(std::pow(rem, 1.0 / ax.two_r)) : 0.0;
    if (!(guess < static_cast<double>(kRangeGuard)))
        throw std::overflow_error("per-coordinate range exceeds the 64-bit guard");
    long long k = guess > 0 ? static_cast<long long>(guess) : 0;
    while (w.admit(acc + ax.term(k + 1))) ++k;
    while (k >= 0 && !w.admit(acc + ax.term(k))) --k;
    return k;
}

mpz_class axis_line(long long kmax) {
    if (kmax < 0) return mpz_class(0);
    mpz_class r = static_cast<unsigned long>(kmax);
    r *= 2;
    r += 1;
    return r;
}

mpz_class count_rec_int(Walker& w, std::size_t level, i128 rem) {
    Axis& ax = w.axes[level];
    if (level + 1 == w.axes.size()) {
        w.tick();
        return axis_line(kmax_int(ax, rem));
    }
    mpz_class total = 0;
    for (long long k = 0;; ++k) {
        i128 t = ax.iterm(k);
        if (t < 0 || t > rem) break;
        w.tick();
        mpz_class sub = count_rec_int(w, level + 1, rem - t);
        if (k) sub *= 2;
        total += sub;
    }
    return total;
}

mpz_class count_rec_dbl(Walker& w, std::size_t level, double acc) {
    Axis& ax = w.axes[level];
    if (level + 1 == w.axes.size()) {
        w.tick();
        return axis_line(kmax_dbl(w, ax, acc));
    }
    mpz_class total = 0;
    for (long long k = 0;; ++k) {
        double na = acc + ax.term(k);
        if (!w.admit(na)) break;
        w.tick();
        mpz_class sub = count_rec_dbl(w, level + 1, na);
        if (k) sub *= 2;
        total += sub;
    }
    return total;
}

mpz_class count_walk(Walker& w) {
    if (w.integral) {
        if (w.ibound < 0) return mpz_class(0);
        return count_rec_int(w, 0, w.ibound);
    }
    if (!w.admit(0.0)) return mpz_class(0);
    return count_rec_dbl(w, 0, 0.0);
}

using BudgetFn = std::function<void(double, long long, std::uint64_t)>;

// Largest k whose term keeps the running total at or below `bound`; -1 when
// even k = 0 exceeds it. Used to start the innermost loop right above the
// window floor instead of walking every leaf below it.
long long floor_k_int(Axis& ax, i128 acc, i128 bound) {
    if (bound < acc) return -1;
    return kmax_int(ax, bound - acc);
}

long long floor_k_dbl(Axis& ax, double acc, double bound) {
    if (!(acc <= bound)) return -1;
    double rem = bound - acc;
    double guess = rem > 1.0 ? std::floor(std::pow(rem, 1.0 / ax.two_r)) : 0.0;
    if (!(guess < static_cast<double>(kRangeGuard)))
        throw std::overflow_error("per-coordinate range exceeds the 64-bit guard");
    long long k = guess > 0 ? static_cast<long long>(guess) : 0;
    while (acc + ax.term(k + 1) <= bound) ++k;
    while (k >= 0 && !(acc + ax.term(k) <= bound)) --k;
    return k;
}

void budget_rec_int(Walker& w, std::size_t level, i128 acc, int nonzero, i128 ilo, const BudgetFn& out) {
    Axis& ax = w.axes[level];
    const bool last = level + 1 == w.axes.size();
    if (last) {
        long long khi = kmax_int(ax, w.ibound - acc);
        if (khi < 0) return;
        long long klo = floor_k_int(ax, acc, ilo);  // everything at or below ilo is out
        for (long long k = klo + 1; k <= khi; ++k) {
            w.tick();
            i128 na = acc + ax.iterm(k);
            int nz = nonzero + (k > 0 ? 1 : 0);
            long long exact = na <= i128(9'000'000'000'000'000'000LL) ? static_cast<long long>(na) : -1;
            out(static_cast<double>(na), exact, std::uint64_t(1) << nz);
        }
        return;
    }
    for (long long k = 0;; ++k) {
        i128 t = ax.iterm(k);
        if (t < 0 || acc + t > w.ibound) break;
        w.tick();
        budget_rec_int(w, level + 1, acc + t, nonzero + (k > 0 ? 1 : 0), ilo, out);
    }
}

void budget_rec_dbl(Walker& w, std::size_t level, double acc, int nonzero, double lo_adj,
                    const BudgetFn& out) {
    Axis& ax = w.axes[level];
    const bool last = level + 1 == w.axes.size();
    if (last) {
        long long khi = kmax_dbl(w, ax, acc);
        if (khi < 0) return;
        long long klo = floor_k_dbl(ax, acc, lo_adj);
        for (long long k = klo + 1; k <= khi; ++k) {
            w.tick();
            double na = acc + ax.term(k);
            out(na, -1, std::uint64_t(1) << (nonzero + (k > 0 ? 1 : 0)));
        }
        return;
    }
    for (long long k = 0;; ++k) {
        double na = acc + ax.term(k);
        if (!w.admit(na)) break;
        w.tick();
        budget_rec_dbl(w, level + 1, na, nonzero + (k > 0 ? 1 : 0), lo_adj, out);
    }
}

using PointFn = std::function<void(std::span<const long long>, double)>;

struct PointWalk {
    Walker* w = nullptr;
    double lo_adj = 0.0;
    i128 ilo = -1;
    std::vector<long long> mags;    // |k_j| per axis
    std::vector<long long> kuser;   // signed point in the caller's order
    const PointFn* visit = nullptr;

    void expand_signs(std::size_t axis, double s) {
        if (axis == mags.size()) {
            (*visit)(std::span<const long long>(kuser.data(), kuser.size()), s);
            return;
        }
        const Axis& ax = (*w).axes[axis];
        kuser[static_cast<std::size_t>(ax.source)] = mags[axis];
        expand_signs(axis + 1, s);
        if (mags[axis] > 0) {
            kuser[static_cast<std::size_t>(ax.source)] = -mags[axis];
            expand_signs(axis + 1, s);
        }
    }

    void rec_int(std::size_t level, i128 acc) {
        Axis& ax = w->axes[level];
        const bool last = level + 1 == mags.size();
        if (last) {
            long long khi = kmax_int(ax, w->ibound - acc);
            if (khi < 0) return;
            long long klo = floor_k_int(ax, acc, ilo);
            for (long long k = klo + 1; k <= khi; ++k) {
                w->tick();
                mags[level] = k;
                expand_signs(0, static_cast<double>(acc + ax.iterm(k)));
            }
            return;
        }
        for (long long k = 0;; ++k) {
            i128 t = ax.iterm(k);
            if (t < 0 || acc + t > w->ibound) break;
            mags[level] = k;
            rec_int(level + 1, acc + t);
        }
    }

    void rec_dbl(std::size_t level, double acc) {
        Axis& ax = w->axes[level];
        const bool last = level + 1 == mags.size();
        if (last) {
            long long khi = kmax_dbl(*w, ax, acc);
            if (khi < 0) return;
            long long klo = floor_k_dbl(ax, acc, lo_adj);
            for (long long k = klo + 1; k <= khi; ++k) {
                w->tick();
                mags[level] = k;
                expand_signs(0, acc + ax.term(k));
            }
            return;
        }
        for (long long k = 0;; ++k) {
            double na = acc + ax.term(k);
            if (!w->admit(na)) break;
            mags[level] = k;
            rec_dbl(level + 1, na);
        }
    }
};

void check_window(double lo, double hi) {
    if (!(lo >= 0.0) || !std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument("budget window must be finite and nonnegative");
    if (lo > hi) throw std::invalid_argument("budget window has lo > hi");
}

// Inclusive integer bound matching the non-strict threshold rule at `lo`.
i128 int_lo_bound(double lo) {
    double la = lo * (1.0 + kSlack);
    if (la > 8.0e37) throw std::overflow_error("budget threshold too large for exact integer counting");
    if (la < 9.0e18) return static_cast<long long>(std::floor(la));
    return mpz_to_i128(mpz_class(std::floor(la)));
}

}  // namespace

double budget(std::span<const long long> k, const SmoothnessProfile& prof) {
    if (static_cast<int>(k.size()) != prof.d)
        throw std::invalid_argument("budget: vector has length " + std::to_string(k.size()) +
                                    ", profile has dimension " + std::to_string(prof.d));
    if (prof.integral_two_r) {
        i128 s = 0;
        for (int j = 0; j < prof.d; ++j) {
            long long a = k[static_cast<std::size_t>(j)];
            i128 t = ipow_capped(a < 0 ? -a : a, std::llround(prof.two_r(j)));
            if (t < 0) throw std::overflow_error("budget term exceeds the exact integer range");
            s += t;
        }
        return static_cast<double>(s);
    }
    double s = 0.0;
    for (int j = 0; j < prof.d; ++j) {
        long long a = k[static_cast<std::size_t>(j)];
        s += pow_term(a < 0 ? -a : a, prof.two_r(j));
    }
    return s;
}

CountResult count_lattice(const SmoothnessProfile& prof, double t, bool strict) {
    if (!std::isfinite(t) || t < 0.0)
        throw std::invalid_argument("count_lattice: threshold must be finite and nonnegative");
    Walker w = make_walker(prof);
    set_threshold(w, t, strict);
    return CountResult{count_walk(w), t, strict};
}

mpz_class count_lattice_int(const SmoothnessProfile& prof, long long bound) {
    if (!prof.integral_two_r)
        throw std::invalid_argument("count_lattice_int requires integral exponents 2R_j");
    Walker w = make_walker(prof);
    w.strict = false;
    w.ibound = bound;
    if (w.ibound < 0) return mpz_class(0);
    return count_rec_int(w, 0, w.ibound);
}

mpz_class count_lattice_int_big(const SmoothnessProfile& prof, const mpz_class& bound) {
    if (!prof.integral_two_r)
        throw std::invalid_argument("count_lattice_int_big requires integral exponents 2R_j");
    if (bound < 0) return mpz_class(0);
    if (mpz_sizeinbase(bound.get_mpz_t(), 2) > 120)
        throw std::overflow_error("budget bound exceeds the 128-bit walk range");
    Walker w = make_walker(prof);
    w.strict = false;
    w.ibound = mpz_to_i128(bound);
    return count_rec_int(w, 0, w.ibound);
}

double budget_as_double(const mpz_class& budget) {
    if (budget < 0 || mpz_sizeinbase(budget.get_mpz_t(), 2) > 120)
        throw std::overflow_error("budget exceeds the 128-bit walk range");
    return static_cast<double>(mpz_to_i128(budget));
}

void enumerate_shell(const SmoothnessProfile& prof, double lo, double hi,
                     const std::function<void(std::span<const long long>, double)>& visit) {
    check_window(lo, hi);
    Walker w = make_walker(prof);
    set_threshold(w, hi, false);
    PointWalk pw;
    pw.w = &w;
    pw.lo_adj = lo * (1.0 + kSlack);
    pw.visit = &visit;
    pw.mags.assign(w.axes.size(), 0);
    pw.kuser.assign(w.axes.size(), 0);
    if (w.integral) {
        if (w.ibound < 0) return;
        pw.ilo = int_lo_bound(lo);
        pw.rec_int(0, 0);
    } else {
        if (!w.admit(0.0)) return;
        pw.rec_dbl(0, 0.0);
    }
}

void for_each_budget(const SmoothnessProfile& prof, double hi,
                     const std::function<void(double, long long, std::uint64_t)>& visit) {
    if (!std::isfinite(hi) || hi < 0.0)
        throw std::invalid_argument("for_each_budget: threshold must be finite and nonnegative");
    if (prof.d > 62) throw std::overflow_error("signed multiplicities overflow beyond d = 62");
    Walker w = make_walker(prof);
    set_threshold(w, hi, false);
    if (w.integral) {
        if (w.ibound < 0) return;
        budget_rec_int(w, 0, 0, 0, i128(-1), visit);
    } else {
        if (!w.admit(0.0)) return;
        budget_rec_dbl(w, 0, 0.0, 0, -1.0, visit);
    }
}

AchievedBudgets achieved_budgets(const SmoothnessProfile& prof, double lo, double hi, std::size_t cap) {
    check_window(lo, hi);
    if (cap == 0) throw std::invalid_argument("achieved_budgets: cap must be positive");
    if (prof.d > 62) throw std::overflow_error("signed multiplicities overflow beyond d = 62");
    std::vector<double> vals;
    Walker w = make_walker(prof);
    set_threshold(w, hi, false);
    auto collect = [&](double s, long long, std::uint64_t) { vals.push_back(s); };
    if (w.integral) {
        if (w.ibound >= 0) budget_rec_int(w, 0, 0, 0, int_lo_bound(lo), collect);
    } else {
        if (w.admit(0.0)) budget_rec_dbl(w, 0, 0.0, 0, lo * (1.0 + kSlack), collect);
    }
    std::sort(vals.begin(), vals.end());
    AchievedBudgets out;
    for (double s : vals) {
        if (!out.values.empty() && s - out.values.back() <= kMergeTol * std::max(1.0, s)) continue;
        if (out.values.size() == cap) {
            out.truncated = true;
            break;
        }
        out.values.push_back(s);
    }
    return out;
}

double node_estimate(const SmoothnessProfile& prof, double t) {
    if (!(t >= 0.0)) return 0.0;
    std::vector<double> widths;
    for (int j = 0; j < prof.d; ++j)
        widths.push_back(2.0 * std::floor(std::pow(t, 1.0 / prof.two_r(j))) + 1.0);
    // the widest coordinate (smallest R_j) is walked last and resolves in O(1)
    std::sort(widths.begin(), widths.end());
    double est = 1.0;
    for (std::size_t i = 0; i + 1 < widths.size(); ++i) {
        est *= widths[i];
        if (est > 1e300) return 1e300;
    }
    return est;
}

}  // namespace sobwidth
