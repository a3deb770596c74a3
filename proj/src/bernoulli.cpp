#include "critline/bernoulli.hpp"

#include <map>
#include <mutex>
#include <utility>

namespace critline {

namespace {

// Tangent numbers T_1..T_n by the integer recurrence of Brent and Harvey;
// B_{2k} = (-1)^(k-1) 2k T_k / (4^k (4^k - 1)).
std::vector<mpz_class> tangent_numbers(int n) {
    std::vector<mpz_class> t(n + 1);
    if (n < 1) return t;
    t[1] = 1;
    for (int k = 2; k <= n; ++k) t[k] = (k - 1) * t[k - 1];
    for (int k = 2; k <= n; ++k)
        for (int j = k; j <= n; ++j) t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];
    return t;
}

std::mutex mu;
std::vector<mpq_class> b2k;  // b2k[k-1] = B_{2k}

void ensure(int count) {
    if (static_cast<int>(b2k.size()) >= count) return;
    int n = std::max(count, 2 * static_cast<int>(b2k.size()));
    n = std::max(n, 32);
    auto t = tangent_numbers(n);
    std::vector<mpq_class> out(n);
    for (int k = 1; k <= n; ++k) {
        mpz_class four_k;
        mpz_ui_pow_ui(four_k.get_mpz_t(), 4, k);
        mpq_class b(2 * k * t[k], four_k * (four_k - 1));
        b.canonicalize();
        out[k - 1] = (k % 2 == 1) ? b : mpq_class(-b);
    }
    b2k = std::move(out);
}

struct Table {
    std::shared_ptr<const std::vector<Real>> vals;
};
std::map<long, Table> fact_cache, stirling_cache;

template <class Coef>
std::shared_ptr<const std::vector<Real>> lookup(std::map<long, Table>& cache, int count, long prec, Coef coef) {
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[prec];
    if (slot.vals && static_cast<int>(slot.vals->size()) >= count) return slot.vals;
    int n = std::max(count, slot.vals ? 2 * static_cast<int>(slot.vals->size()) : 0);
    ensure(n);
    auto v = std::make_shared<std::vector<Real>>();
    v->reserve(n);
    for (int k = 1; k <= n; ++k) {
        Real r(prec);
        mpq_class q = coef(k, b2k[k - 1]);
        mpfr_set_q(r.get(), q.get_mpq_t(), MPFR_RNDN);
        v->push_back(std::move(r));
    }
    slot.vals = v;
    return slot.vals;
}

}  // namespace

mpq_class bernoulli_2k(int k) {
    std::lock_guard<std::mutex> lock(mu);
    ensure(k);
    return b2k[k - 1];
}

std::shared_ptr<const std::vector<Real>> bernoulli_over_factorial(int count, long prec) {
    return lookup(fact_cache, count, prec, [](int k, const mpq_class& b) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), 2 * k);
        mpq_class q = b / mpq_class(f);
        q.canonicalize();
        return q;
    });
}

std::shared_ptr<const std::vector<Real>> stirling_coefficients(int count, long prec) {
    return lookup(stirling_cache, count, prec, [](int k, const mpq_class& b) {
        mpq_class q = b / mpq_class(2 * k * (2 * k - 1));
        q.canonicalize();
        return q;
    });
}

const std::vector<double>& bernoulli_over_factorial_d() {
    static const std::vector<double> v = [] {
        auto r = bernoulli_over_factorial(60, 64);
        std::vector<double> out;
        for (const auto& x : *r) out.push_back(x.to_double());
        return out;
    }();
    return v;
}

}  // namespace critline
