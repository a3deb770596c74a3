#include "critline/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "critline/errors.hpp"

namespace critline {

namespace {

std::mutex rule_mutex;
std::map<std::pair<int, long>, std::shared_ptr<const GaussRule>> rule_cache;

// P_m(x) and P_m'(x) by the three-term recurrence
void legendre(int m, const Real& x, Real& p, Real& dp) {
    long b = x.prec();
    Real p0(1L, b), p1 = x;
    for (int k = 2; k <= m; ++k) {
        Real p2 = (x * p1 * long(2 * k - 1) - p0 * long(k - 1)) / long(k);
        p0 = std::move(p1);
        p1 = std::move(p2);
    }
    p = p1;
    dp = (x * p1 - p0) * long(m) / (x * x - 1L);
}

}  // namespace

std::shared_ptr<const GaussRule> gauss_legendre(int m, long bits) {
    if (m < 1) throw PreconditionError("gauss_legendre needs m >= 1");
    std::lock_guard<std::mutex> lock(rule_mutex);
    auto key = std::make_pair(m, bits);
    if (auto it = rule_cache.find(key); it != rule_cache.end()) return it->second;

    long wb = bits + 16;
    auto rule = std::make_shared<GaussRule>();
    rule->nodes.assign(m, Real(bits));
    rule->weights.assign(m, Real(bits));
    const double pi = 3.141592653589793;
    Real p(wb), dp(wb);
    for (int i = 0; i < (m + 1) / 2; ++i) {
        // i-th largest root
        Real x(std::cos(pi * (i + 0.75) / (m + 0.5)), wb);
        for (int it = 0; it < 100; ++it) {
            legendre(m, x, p, dp);
            Real dx = p / dp;
            x -= dx;
            if (dx.is_zero() || dx.exponent() < -wb + 4) break;
        }
        legendre(m, x, p, dp);
        Real w = Real(2L, wb) / ((1L - x * x) * dp * dp);
        rule->nodes[m - 1 - i] = x.at(bits);
        rule->nodes[i] = (-x).at(bits);
        rule->weights[m - 1 - i] = w.at(bits);
        rule->weights[i] = w.at(bits);
    }
    if (m % 2 == 1) rule->nodes[m / 2] = Real(bits);
    rule_cache.emplace(key, rule);
    return rule;
}

int gauss_order_for(double half_phase, long bits) {
    // error of the m-point rule on e^{ikx} behaves like (e k / 4m)^{2m}
    double k = std::max(half_phase, 1e-3);
    for (int m = 4; m < 2000; ++m)
        if (2.0 * m * std::log2(std::exp(1.0) * k / (4.0 * m)) < -static_cast<double>(bits)) return m;
    throw AccuracyError("gauss_order_for: no rule order reaches the target", 0.0);
}

}  // namespace critline
