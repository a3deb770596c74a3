#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <random>

#include "critline/errors.hpp"
#include "critline/gamma.hpp"
#include "critline/kernels.hpp"
#include "critline/zeros.hpp"
#include "critline/zeta.hpp"
#include "support.hpp"

using namespace critline;
using testing_support::cplx;
using testing_support::oracles;
using testing_support::real;
using testing_support::rel;

namespace {

Complex C(double re, double im, const PrecisionContext& ctx) { return Complex(re, im, ctx.bits()); }

bool same_bits(const Complex& a, const Complex& b) {
    return mpfr_equal_p(a.re.get(), b.re.get()) && mpfr_equal_p(a.im.get(), b.im.get());
}

}  // namespace

TEST_CASE("zeta examples") {
    PrecisionContext ctx(30);
    long b = ctx.bits();
    Real pi = const_pi(b);
    Real z4 = pow(pi, 4L) / 90L;
    CHECK(rel(zeta(C(4, 0, ctx), ctx), Complex(z4, Real(b))) < 10 * ctx.eps());
    CHECK(zeta(C(-2, 0, ctx), ctx).is_zero());
    CHECK(abs(zeta(C(0.5, 14.134725, ctx), ctx)).to_double() < 1e-5);
    CHECK_THROWS_AS(zeta(C(1, 0, ctx), ctx), PoleError);
}

TEST_CASE("zeta, chi, xi against oracles") {
    PrecisionContext ctx(30);
    long b = ctx.bits();
    for (auto& e : oracles()["zeta"]) {
        INFO(e["s"].dump());
        CHECK(rel(zeta(cplx(e["s"], b), ctx), cplx(e["v"], b), 1) < 10 * ctx.eps());
    }
    for (auto& e : oracles()["chi"]) CHECK(rel(chi(cplx(e["s"], b), ctx), cplx(e["v"], b), 1) < 10 * ctx.eps());
    for (auto& e : oracles()["xi"]) CHECK(rel(xi(cplx(e["s"], b), ctx), cplx(e["v"], b), 1) < 10 * ctx.eps());
}

TEST_CASE("chi examples") {
    PrecisionContext ctx(30);
    long b = ctx.bits();
    Complex s = C(0.3, 40, ctx);
    CHECK(rel(chi(s, ctx), chi(1L - s, ctx), 1) < 10 * ctx.eps());
    Real pi6 = const_pi(b) / 6L;
    CHECK(rel(chi(C(2, 0, ctx), ctx), Complex(pi6, Real(b))) < 10 * ctx.eps());
    CHECK(abs(chi(C(0.5, 14.134725, ctx), ctx)).to_double() < 1e-5);
    CHECK_THROWS_AS(chi(C(0, 0, ctx), ctx), PoleError);
    CHECK_THROWS_AS(chi(C(1, 0, ctx), ctx), PoleError);
}

TEST_CASE("xi examples") {
    PrecisionContext ctx(30);
    Complex s = C(0.2, 25, ctx);
    CHECK(rel(xi(s, ctx), xi(1L - s, ctx), 1) < 10 * ctx.eps());
    CHECK(rel(xi(C(0, 0, ctx), ctx), C(0.5, 0, ctx)) < 10 * ctx.eps());
    CHECK(rel(xi(C(1, 0, ctx), ctx), C(0.5, 0, ctx)) < 10 * ctx.eps());
    CHECK(abs(xi(C(0.5, 14.134725, ctx), ctx)).to_double() < 1e-5);
}

TEST_CASE("xi_uv examples and symmetries") {
    PrecisionContext ctx(30);
    long b = ctx.bits();
    auto on = xi_uv(Real(0.5, b), Real(20.0, b), ctx);
    CHECK(abs(on.v).to_double() < 10 * ctx.eps());
    Real x3(0.3, b);
    auto l = xi_uv(x3, Real(30.0, b), ctx), r = xi_uv(1L - x3, Real(30.0, b), ctx);
    CHECK(rel(l.u, r.u, 1) < 10 * ctx.eps());
    CHECK(rel(l.v, -r.v, 1) < 10 * ctx.eps());
    auto z = xi_uv(Real(0.5, b), Real(14.134725, b), ctx);
    CHECK(abs(z.u).to_double() < 1e-6);
    CHECK(abs(z.v).to_double() < 1e-6);
}

TEST_CASE("functional equation on 200 random strip points") {
    PrecisionContext ctx(30);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> x(0, 1), y(10, 200);
    for (int i = 0; i < 200; ++i) {
        Complex s = C(x(rng), y(rng), ctx);
        Complex a = xi(s, ctx), c = xi(1L - s, ctx);
        double scale = std::max(1.0, abs(a).to_double());
        CHECK(abs(a - c).to_double() <= 10 * ctx.eps() * scale);
    }
}

TEST_CASE("conjugation is exact") {
    PrecisionContext ctx(30);
    for (double y : {12.5, 77.0, 150.25}) {
        Complex s = C(0.35, y, ctx);
        CHECK(same_bits(xi(conj(s), ctx), conj(xi(s, ctx))));
    }
}

TEST_CASE("theta and Z") {
    PrecisionContext ctx(30);
    long b = ctx.bits();
    for (auto& e : oracles()["theta"])
        CHECK(rel(riemann_siegel_theta(real(e["t"], b), ctx), real(e["v"], b), 1) < 10 * ctx.eps());
    for (auto& e : oracles()["hardy_Z"])
        CHECK(rel(hardy_Z(real(e["t"], b), ctx), real(e["v"], b), 1) < 10 * ctx.eps());

    CHECK(abs(riemann_siegel_theta(Real(17.8455, b), ctx)).to_double() < 1e-3);
    Real t(1e4, b), pi = const_pi(b);
    Real asym = t / 2L * log(t / (2L * pi * const_e(b))) - pi / 8L;
    CHECK(abs(riemann_siegel_theta(t, ctx) - asym).to_double() < 1e-2);

    CHECK(hardy_Z(Real(14.0, b), ctx).sign() * hardy_Z(Real(14.2, b), ctx).sign() < 0);
    Real t50(50.0, b);
    Real z = hardy_Z(t50, ctx);
    Real m = norm(zeta(Complex(Real(0.5, b), t50), ctx));
    CHECK(rel(sqr(z), m) < 10 * ctx.eps());
    CHECK(abs(hardy_Z_complex(Real(100.0, b), ctx).im).to_double() < 10 * ctx.eps());

    // theta increasing above 10
    double prev = riemann_siegel_theta(Real(10.0, b), ctx).to_double();
    for (double s = 10.5; s < 60; s += 0.5) {
        double th = riemann_siegel_theta(Real(s, b), ctx).to_double();
        CHECK(th > prev);
        prev = th;
    }
}

TEST_CASE("arg zeta on the critical line") {
    PrecisionContext ctx(30);
    long b = ctx.bits();
    auto rec = arg_zeta_critical(real(oracles()["y1"], b), ctx);
    CHECK(rec.at_zero);
    CHECK(std::abs(rec.arg.to_double() - 0.1578739) < 5e-8);

    auto zero = arg_zeta_critical(Real(0L, b), ctx);
    CHECK(zero.arg.is_zero());

    // consistency with Z at t = 50: arg = -theta + k pi with sign(Z) = (-1)^k
    auto r50 = arg_zeta_critical(Real(50.0, b), ctx);
    Real k = (r50.arg + r50.theta) / const_pi(b);
    CHECK(abs(k - round(k)).to_double() < 10 * ctx.eps());
    long kk = round(k).to_long();
    int zs = hardy_Z(Real(50.0, b), ctx).sign();
    CHECK(((kk % 2 == 0) ? 1 : -1) == zs);
    CHECK(rel(r50.S, r50.arg / const_pi(b)) < 10 * ctx.eps());
}

TEST_CASE("phase continuity away from zero ordinates") {
    // double branch tracking over [10, 50] at step 1e-3, jumps only at zeros
    double prev_arg = 0;
    bool first = true;
    int jumps = 0;
    for (long i = 0; i <= 40000; ++i) {
        double t = 10 + 1e-3 * i;
        long k;
        try {
            k = critical_branch(t);
        } catch (const ContinuationError&) {
            first = true;
            continue;
        }
        double a = -fast::theta(t) + k * M_PI;
        if (!first && std::abs(a - prev_arg) > M_PI / 2) ++jumps;
        prev_arg = a;
        first = false;
    }
    // one jump of pi per zero in [10, 50]
    CHECK(jumps == 10);
}

TEST_CASE("chi_hat and offline residual") {
    PrecisionContext ctx(30);
    long b = ctx.bits();
    Real half(0.5, b);

    // restoration at a = 0.3, y = 100
    Real a(0.3, b), y(100.0, b);
    auto h = chi_hat(a, y, ctx), hr = chi_hat(1L - a, y, ctx);
    Complex restored = (polar(h.modulus, h.phase) + conj(polar(hr.modulus, hr.phase))) / 2L;
    CHECK(rel(restored, chi(Complex(a, y), ctx)) < 1e-3);

    // a = 1/2 phase vs theta + arg zeta
    Real y3(1000.0, b);
    auto h3 = chi_hat(half, y3, ctx);
    auto ph = arg_zeta_critical(y3, ctx);
    CHECK(abs(h3.phase - (ph.theta + ph.arg)).to_double() < 1e-2);
    CHECK(h3.modulus > 0.0);

    CHECK_THROWS_AS(chi_hat(half, Real(5.0, b), ctx), RegimeError);

    // on the line the residual dips at the first zero
    double best = 10;
    for (double t = 14.10; t < 14.17; t += 0.0005)
        best = std::min(best, offline_residual(half, Real(t, b), ctx).to_double());
    CHECK(best < 1e-2);

    // a = 0.7 stays away from 0
    double lo = 10;
    for (double t = 50; t <= 60; t += 0.01) lo = std::min(lo, offline_residual(Real(0.7, b), Real(t, b), ctx).to_double());
    CHECK(lo > 0.05);
}

TEST_CASE("oracle consistency of the counting formula") {
    PrecisionContext ctx(30);
    for (auto& [T, n] : oracles()["nzeros"].items()) {
        double t = std::stod(T);
        CHECK(count_sign_changes(t) == n.get<long>());
        auto c = count_zeros(Real(t, ctx.bits()), false, ctx);
        CHECK(round(c.total).to_long() == n.get<long>());
    }
}

TEST_CASE("main sum kernels: serial vs parallel and thread counts") {
    std::complex<double> s(0.5, 5000.0);
    long N = 20000;
    auto ser = kernels::main_sum_d(s, N, kernels::Mode::Serial);
    auto par = kernels::main_sum_d(s, N, kernels::Mode::Parallel);
    CHECK(std::abs(ser - par) < 1e-9 * std::abs(ser) + 1e-9);

    long bits = PrecisionContext(30).bits();
    Complex s_mp(Real(0.5, bits), Real(5000.0, bits));
    Complex a(bits), c(bits);
    kernels::main_sum_mp(a, s_mp, 3000, bits, kernels::Mode::Serial);
    kernels::main_sum_mp(c, s_mp, 3000, bits, kernels::Mode::Parallel);
    CHECK(rel(a, c) < 1e-27);

    int saved = omp_get_max_threads();
    Complex t1(bits), t4(bits);
    omp_set_num_threads(1);
    kernels::main_sum_mp(t1, s_mp, 3000, bits, kernels::Mode::Parallel);
    auto d1 = kernels::main_sum_d(s, N, kernels::Mode::Parallel);
    omp_set_num_threads(4);
    kernels::main_sum_mp(t4, s_mp, 3000, bits, kernels::Mode::Parallel);
    auto d4 = kernels::main_sum_d(s, N, kernels::Mode::Parallel);
    omp_set_num_threads(saved);
    CHECK(same_bits(t1, t4));
    CHECK(d1 == d4);
}

TEST_CASE("zeta determinism") {
    PrecisionContext ctx(30);
    Complex s = C(0.5, 321.5, ctx);
    CHECK(same_bits(zeta(s, ctx), zeta(s, ctx)));
}
