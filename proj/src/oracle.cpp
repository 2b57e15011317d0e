#include "sobwidth/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "sobwidth/spectrum.hpp"

namespace sobwidth::oracle {
namespace {

using i128 = __int128;

constexpr double kPointGuard = 1e8;

// Independent power evaluation: plain multiply loop on the integral path,
// std::pow otherwise. Shares nothing with the lattice recursion.
double term_value(long long k, double two_r, bool integral) {
    long long a = k < 0 ? -k : k;
    if (integral) {
        i128 t = 1;
        long long e = std::llround(two_r);
        for (long long i = 0; i < e; ++i) t *= a;
        return static_cast<double>(t);
    }
    if (a == 0) return 0.0;
    return std::pow(static_cast<double>(a), two_r);
}

void check_box(const SmoothnessProfile& prof, long long box) {
    if (box < 1) throw std::invalid_argument("box must be >= 1");
    if (prof.integral_two_r) {
        // keep exact 128-bit budgets representable across the whole box
        for (int j = 0; j < prof.d; ++j)
            if (prof.two_r(j) * std::log2(static_cast<double>(box) + 2.0) > 120.0)
                throw std::overflow_error("brute-force budgets exceed the exact integer range");
    }
}

// Largest |k| whose single term stays at or below t; every point of the ball
// {S <= t} lives in the rectangle of these per-coordinate ranges.
long long axis_range(double t, double two_r, bool integral) {
    if (t < 1.0) return 0;
    double guess = std::floor(std::pow(t, 1.0 / two_r));
    if (!(guess < 4e18)) throw std::overflow_error("brute-force coordinate range exceeds the 64-bit guard");
    long long k = static_cast<long long>(guess);
    while (term_value(k + 1, two_r, integral) <= t) ++k;
    while (k >= 1 && term_value(k, two_r, integral) > t) --k;
    return k;
}

struct Rectangle {
    std::vector<long long> ranges;
    double points = 1.0;
};

Rectangle fit_rectangle(const SmoothnessProfile& prof, double t, long long box) {
    Rectangle rect;
    long long widest = 0;
    for (int j = 0; j < prof.d; ++j) {
        long long b = axis_range(t, prof.two_r(j), prof.integral_two_r);
        widest = std::max(widest, b);
        rect.ranges.push_back(b);
        rect.points *= 2.0 * static_cast<double>(b) + 1.0;
    }
    if (widest > box)
        throw InsufficientBox("budget ball reaches past the box at |k| = " + std::to_string(widest),
                              widest);
    if (rect.points > kPointGuard)
        throw std::overflow_error("brute-force box exceeds the 1e8 point guard");
    return rect;
}

// Full scan of the rectangle, no pruning; visits every budget.
template <class Visit>
void scan(const SmoothnessProfile& prof, const Rectangle& rect, const Visit& visit) {
    std::vector<std::vector<double>> table(static_cast<std::size_t>(prof.d));
    for (int j = 0; j < prof.d; ++j) {
        long long b = rect.ranges[static_cast<std::size_t>(j)];
        table[static_cast<std::size_t>(j)].resize(static_cast<std::size_t>(b) + 1);
        for (long long k = 0; k <= b; ++k)
            table[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
                term_value(k, prof.two_r(j), prof.integral_two_r);
    }
    auto rec = [&](auto&& self, int j, double acc) -> void {
        if (j == prof.d) {
            visit(acc);
            return;
        }
        long long b = rect.ranges[static_cast<std::size_t>(j)];
        for (long long kj = -b; kj <= b; ++kj)
            self(self, j + 1, acc + table[static_cast<std::size_t>(j)][static_cast<std::size_t>(kj < 0 ? -kj : kj)]);
    };
    rec(rec, 0, 0.0);
}

}  // namespace

std::vector<double> brute_budget_spectrum(const SmoothnessProfile& prof, std::uint64_t n_max,
                                          long long box) {
    if (n_max == 0) throw std::invalid_argument("n_max must be >= 1");
    check_box(prof, box);
    double inv_two_g = 0.0;  // count(t) grows like t^{sum 1/(2R_j)}
    for (int j = 0; j < prof.d; ++j) inv_two_g += 1.0 / prof.two_r(j);
    double t = 1.0;
    for (int iter = 0; iter < 200; ++iter) {
        Rectangle rect = fit_rectangle(prof, t, box);
        std::priority_queue<double> heap;  // n_max smallest budgets at or below t
        scan(prof, rect, [&](double s) {
            if (s > t) return;
            if (heap.size() < n_max) {
                heap.push(s);
            } else if (s < heap.top()) {
                heap.pop();
                heap.push(s);
            }
        });
        if (heap.size() >= n_max) {
            // every point with S <= heap.top() <= t lies inside the rectangle,
            // so these really are the n_max smallest budgets over all of Z^d
            std::vector<double> out(heap.size());
            for (std::size_t i = out.size(); i-- > 0;) {
                out[i] = heap.top();
                heap.pop();
            }
            return out;
        }
        double seen = std::max<double>(static_cast<double>(heap.size()), 1.0);
        double target = t * std::pow(static_cast<double>(n_max) / seen, 1.0 / inv_two_g) * 1.25;
        t = std::max(target, 1.3 * t);
    }
    throw std::runtime_error("brute-force threshold search diverged");
}

std::vector<double> brute_spectrum(const SmoothnessProfile& prof, std::uint64_t n_max, long long box) {
    std::vector<double> budgets = brute_budget_spectrum(prof, n_max, box);
    std::vector<double> weights(budgets.size());
    for (std::size_t i = 0; i < budgets.size(); ++i) weights[i] = weight_from_budget(budgets[i]);
    return weights;
}

mpz_class brute_count(const SmoothnessProfile& prof, double t, long long box) {
    if (!std::isfinite(t) || t < 0.0) throw std::invalid_argument("threshold must be finite and nonnegative");
    check_box(prof, box);
    Rectangle rect = fit_rectangle(prof, t, box);
    unsigned long long c = 0;
    scan(prof, rect, [&](double s) {
        if (s <= t) ++c;
    });
    return mpz_class(static_cast<unsigned long>(c));
}

std::vector<double> brute_limit_spectrum(int d) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    if (d > 7) throw std::overflow_error("brute limit spectrum is guarded at d <= 7");
    std::size_t total = 1;
    for (int j = 0; j < d; ++j) total *= 3;
    std::vector<double> weights;
    weights.reserve(total);
    std::vector<int> k(static_cast<std::size_t>(d), -1);
    while (true) {
        int sum = 0;
        for (int v : k) sum += v < 0 ? -v : v;
        weights.push_back(1.0 / std::sqrt(1.0 + sum));
        int j = 0;
        while (j < d && k[static_cast<std::size_t>(j)] == 1) k[static_cast<std::size_t>(j++)] = -1;
        if (j == d) break;
        ++k[static_cast<std::size_t>(j)];
    }
    std::sort(weights.begin(), weights.end(), std::greater<>());
    return weights;
}

}  // namespace sobwidth::oracle
