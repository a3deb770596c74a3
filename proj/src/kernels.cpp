#include "critline/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace critline::kernels {

namespace {

constexpr long kBlock = 4096;

std::mutex sieve_mu;
std::shared_ptr<const std::vector<std::uint32_t>> sieve;

struct PrimeLogs {
    long limit = 0;  // covers every prime below limit
    std::vector<std::uint32_t> primes;
    std::vector<Real> logs;
};
std::mutex logs_mu;
std::map<long, std::shared_ptr<const PrimeLogs>> log_cache;

// natural logs of all primes below n at `bits`
std::shared_ptr<const PrimeLogs> prime_logs(long n, long bits) {
    std::lock_guard<std::mutex> lock(logs_mu);
    auto& slot = log_cache[bits];
    if (slot && slot->limit >= n) return slot;
    long cap = std::max<long>(n, slot ? 2 * slot->limit : 1024);
    auto spf = spf_table(cap);
    auto out = std::make_shared<PrimeLogs>();
    out->limit = cap;
    for (long p = 2; p < cap; ++p)
        if ((*spf)[p] == p) out->primes.push_back(static_cast<std::uint32_t>(p));
    long np = static_cast<long>(out->primes.size());
    out->logs.reserve(np);
    for (long i = 0; i < np; ++i) out->logs.emplace_back(bits);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < np; ++i) mpfr_log_ui(out->logs[i].get(), out->primes[i], MPFR_RNDN);
    slot = out;
    return slot;
}

// Thread-owned buffers for the prime/composite table, reused between calls.
struct Workspace {
    long bits = 0;
    std::vector<__mpfr_struct> re, im;
    ~Workspace() { release(); }
    void release() {
        for (auto& x : re) mpfr_clear(&x);
        for (auto& x : im) mpfr_clear(&x);
        re.clear();
        im.clear();
    }
    void ensure(long n, long b) {
        if (b != bits) {
            release();
            bits = b;
        }
        long have = static_cast<long>(re.size());
        if (have >= n) return;
        re.resize(n);
        im.resize(n);
        for (long i = have; i < n; ++i) {
            mpfr_init2(&re[i], b);
            mpfr_init2(&im[i], b);
        }
    }
};

thread_local Workspace workspace;

// Per-thread scratch for complex products and sums.
struct Scratch {
    mpfr_t a, b, c;
    explicit Scratch(long bits) {
        mpfr_init2(a, bits);
        mpfr_init2(b, bits);
        mpfr_init2(c, bits);
    }
    ~Scratch() {
        mpfr_clear(a);
        mpfr_clear(b);
        mpfr_clear(c);
    }
};

}  // namespace

std::shared_ptr<const std::vector<std::uint32_t>> spf_table(long n) {
    std::lock_guard<std::mutex> lock(sieve_mu);
    if (sieve && static_cast<long>(sieve->size()) >= n) return sieve;
    long size = std::max<long>(n, sieve ? 2 * static_cast<long>(sieve->size()) : 1024);
    auto t = std::make_shared<std::vector<std::uint32_t>>(size, 0);
    auto& v = *t;
    for (long i = 2; i < size; ++i) {
        if (v[i] != 0) continue;
        v[i] = static_cast<std::uint32_t>(i);
        if (i > size / i) continue;
        for (long j = i * i; j < size; j += i)
            if (v[j] == 0) v[j] = static_cast<std::uint32_t>(i);
    }
    sieve = t;
    return sieve;
}

std::complex<double> main_sum_d(std::complex<double> s, long N, Mode mode) {
    if (N <= 1) return 0.0;
    if (mode == Mode::Serial) {
        std::complex<double> acc = 0.0;
        for (long n = 1; n < N; ++n) acc += std::exp(-s * std::log(static_cast<double>(n)));
        return acc;
    }
    auto spf_ptr = spf_table(N);
    const auto& spf = *spf_ptr;
    std::vector<std::complex<double>> a(N);
    a[1] = 1.0;
    const double sigma = s.real(), t = s.imag();
#pragma omp parallel for schedule(static)
    for (long n = 2; n < N; ++n) {
        if (spf[n] != n) continue;
        double l = std::log(static_cast<double>(n));
        a[n] = std::polar(std::exp(-sigma * l), -t * l);
    }
    for (long lo = 2; lo < N; lo *= 2) {
        long hi = std::min(N, 2 * lo);
#pragma omp parallel for schedule(static)
        for (long n = lo; n < hi; ++n) {
            long p = spf[n];
            if (p != n) a[n] = a[p] * a[n / p];
        }
    }
    long nblocks = (N - 1 + kBlock - 1) / kBlock;
    std::vector<std::complex<double>> part(nblocks);
#pragma omp parallel for schedule(static)
    for (long b = 0; b < nblocks; ++b) {
        std::complex<double> acc = 0.0;
        long end = std::min(N, 1 + (b + 1) * kBlock);
        for (long n = 1 + b * kBlock; n < end; ++n) acc += a[n];
        part[b] = acc;
    }
    std::complex<double> acc = 0.0;
    for (const auto& p : part) acc += p;
    return acc;
}

void main_sum_mp(Complex& out, const Complex& s, long N, long bits, Mode mode, PrimeState* warm) {
    out = Complex(bits);
    if (N <= 1) return;
    if (mode == Mode::Serial) {
        Real l(bits), m(bits), ph(bits), sn(bits), cs(bits);
        for (long n = 1; n < N; ++n) {
            mpfr_log_ui(l.get(), n, MPFR_RNDN);
            mpfr_mul(m.get(), s.re.get(), l.get(), MPFR_RNDN);
            mpfr_neg(m.get(), m.get(), MPFR_RNDN);
            mpfr_exp(m.get(), m.get(), MPFR_RNDN);
            mpfr_mul(ph.get(), s.im.get(), l.get(), MPFR_RNDN);
            mpfr_sin_cos(sn.get(), cs.get(), ph.get(), MPFR_RNDN);
            mpfr_mul(cs.get(), cs.get(), m.get(), MPFR_RNDN);
            mpfr_mul(sn.get(), sn.get(), m.get(), MPFR_RNDN);
            mpfr_add(out.re.get(), out.re.get(), cs.get(), MPFR_RNDN);
            mpfr_sub(out.im.get(), out.im.get(), sn.get(), MPFR_RNDN);
        }
        return;
    }

    auto spf_ptr = spf_table(N);
    const auto& spf = *spf_ptr;
    auto logs = prime_logs(N, bits);
    Workspace& ws = workspace;
    ws.ensure(N, bits);
    auto* re = ws.re.data();
    auto* im = ws.im.data();
    mpfr_set_ui(&re[1], 1, MPFR_RNDN);
    mpfr_set_ui(&im[1], 0, MPFR_RNDN);

    long np = std::lower_bound(logs->primes.begin(), logs->primes.end(), static_cast<std::uint32_t>(N)) -
              logs->primes.begin();
    const bool half = mpfr_cmp_d(s.re.get(), 0.5) == 0;

    // warm path: |dt log N| small enough for a short rotation series
    bool rotate = false;
    Real dt(bits);
    int terms = 0;
    if (warm && warm->valid() && warm->N == N && warm->bits == bits && warm->updates < 8 &&
        mpfr_equal_p(warm->sigma.get(), s.re.get())) {
        mpfr_sub(dt.get(), s.im.get(), warm->t.get(), MPFR_RNDN);
        double x = std::fabs(dt.to_double()) * std::log(static_cast<double>(N));
        if (x < 1e-4) {
            rotate = true;
            // x^k / k! < 2^-bits
            double lg = 0;
            terms = 1;
            if (x > 0) {
                while (lg + terms * std::log2(x) > -static_cast<double>(bits)) {
                    ++terms;
                    lg -= std::log2(static_cast<double>(terms));
                }
            }
        }
    }

#pragma omp parallel
    {
        Scratch sc(bits);
        mpfr_t c, sn, x2, tmp;
        mpfr_inits2(bits, c, sn, x2, tmp, static_cast<mpfr_ptr>(nullptr));
#pragma omp for schedule(static)
        for (long i = 0; i < np; ++i) {
            long p = logs->primes[i];
            mpfr_srcptr l = logs->logs[i].get();
            if (rotate) {
                // (re + i im) * (cos x - i sin x), x = dt log p
                mpfr_mul(sc.a, dt.get(), l, MPFR_RNDN);
                mpfr_sqr(x2, sc.a, MPFR_RNDN);
                // cos x = sum (-1)^k x^2k/(2k)!, sin x = x sum (-1)^k x^2k/(2k+1)!
                int kmax = terms / 2 + 1;
                mpfr_set_ui(c, 1, MPFR_RNDN);
                mpfr_set_ui(sn, 1, MPFR_RNDN);
                for (int k = kmax; k >= 1; --k) {
                    mpfr_mul(c, c, x2, MPFR_RNDN);
                    mpfr_div_ui(c, c, static_cast<unsigned long>((2 * k - 1) * (2 * k)), MPFR_RNDN);
                    mpfr_ui_sub(c, 1, c, MPFR_RNDN);
                    mpfr_mul(sn, sn, x2, MPFR_RNDN);
                    mpfr_div_ui(sn, sn, static_cast<unsigned long>((2 * k) * (2 * k + 1)), MPFR_RNDN);
                    mpfr_ui_sub(sn, 1, sn, MPFR_RNDN);
                }
                mpfr_mul(sn, sn, sc.a, MPFR_RNDN);
                mpfr_ptr wr = warm->re[i].get();
                mpfr_ptr wi = warm->im[i].get();
                mpfr_mul(sc.b, wr, c, MPFR_RNDN);
                mpfr_mul(tmp, wi, sn, MPFR_RNDN);
                mpfr_add(sc.b, sc.b, tmp, MPFR_RNDN);
                mpfr_mul(sc.c, wi, c, MPFR_RNDN);
                mpfr_mul(tmp, wr, sn, MPFR_RNDN);
                mpfr_sub(wi, sc.c, tmp, MPFR_RNDN);
                mpfr_set(wr, sc.b, MPFR_RNDN);
                mpfr_set(&re[p], wr, MPFR_RNDN);
                mpfr_set(&im[p], wi, MPFR_RNDN);
                continue;
            }
            if (half) {
                mpfr_set_ui(sc.a, static_cast<unsigned long>(p), MPFR_RNDN);
                mpfr_rec_sqrt(sc.a, sc.a, MPFR_RNDN);
            } else {
                mpfr_mul(sc.a, s.re.get(), l, MPFR_RNDN);
                mpfr_neg(sc.a, sc.a, MPFR_RNDN);
                mpfr_exp(sc.a, sc.a, MPFR_RNDN);
            }
            mpfr_mul(sc.b, s.im.get(), l, MPFR_RNDN);
            mpfr_sin_cos(&im[p], &re[p], sc.b, MPFR_RNDN);
            mpfr_mul(&re[p], &re[p], sc.a, MPFR_RNDN);
            mpfr_mul(&im[p], &im[p], sc.a, MPFR_RNDN);
            mpfr_neg(&im[p], &im[p], MPFR_RNDN);
        }
        mpfr_clears(c, sn, x2, tmp, static_cast<mpfr_ptr>(nullptr));
        for (long lo = 2; lo < N; lo *= 2) {
            long hi = std::min(N, 2 * lo);
#pragma omp for schedule(static)
            for (long n = lo; n < hi; ++n) {
                long p = spf[n];
                if (p == n) continue;
                long q = n / p;
                // plain products; mpfr_fmma is exact-then-round and slower here
                mpfr_mul(sc.a, &re[p], &re[q], MPFR_RNDN);
                mpfr_mul(sc.b, &im[p], &im[q], MPFR_RNDN);
                mpfr_sub(&re[n], sc.a, sc.b, MPFR_RNDN);
                mpfr_mul(sc.a, &re[p], &im[q], MPFR_RNDN);
                mpfr_mul(sc.b, &im[p], &re[q], MPFR_RNDN);
                mpfr_add(&im[n], sc.a, sc.b, MPFR_RNDN);
            }
        }
    }

    if (warm) {
        if (rotate) {
            ++warm->updates;
        } else {
            warm->N = N;
            warm->bits = bits;
            warm->updates = 0;
            warm->re.clear();
            warm->im.clear();
            warm->re.reserve(np);
            warm->im.reserve(np);
            for (long i = 0; i < np; ++i) {
                long p = logs->primes[i];
                warm->re.emplace_back(bits);
                warm->im.emplace_back(bits);
                mpfr_set(warm->re.back().get(), &re[p], MPFR_RNDN);
                mpfr_set(warm->im.back().get(), &im[p], MPFR_RNDN);
            }
        }
        warm->sigma = s.re;
        warm->t = s.im;
    }

    long nblocks = (N - 1 + kBlock - 1) / kBlock;
    std::vector<Complex> part;
    part.reserve(nblocks);
    for (long b = 0; b < nblocks; ++b) part.emplace_back(bits);
#pragma omp parallel for schedule(static)
    for (long b = 0; b < nblocks; ++b) {
        long end = std::min(N, 1 + (b + 1) * kBlock);
        mpfr_ptr pr = part[b].re.get();
        mpfr_ptr pi = part[b].im.get();
        for (long n = 1 + b * kBlock; n < end; ++n) {
            mpfr_add(pr, pr, &re[n], MPFR_RNDN);
            mpfr_add(pi, pi, &im[n], MPFR_RNDN);
        }
    }
    for (const auto& p : part) out += p;
}

}  // namespace critline::kernels
