#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "critline/errors.hpp"
#include "critline/lambert.hpp"
#include "support.hpp"

using namespace critline;
using testing_support::oracles;
using testing_support::real;
using testing_support::rel;

TEST_CASE("lambert examples") {
    PrecisionContext ctx(30);
    long b = ctx.bits();
    CHECK(lambert_w0(Real(0L, b), ctx).is_zero());
    CHECK(rel(lambert_w0(const_e(b), ctx), Real(1L, b)) < 10 * ctx.eps());
    Real branch = -1L / const_e(b);
    CHECK(rel(lambert_w0(branch, ctx), Real(-1L, b)) < 1e-12);
    CHECK_THROWS_AS(lambert_w0(branch - 1e-10, ctx), DomainError);

    PrecisionContext c40(40);
    Real x = (Real("1e22", c40.bits() + 80) - Real(1.375, c40.bits() + 80)) / const_e(c40.bits() + 80);
    Real w = lambert_w0(x, c40);
    Real back = w.at(x.prec()) * exp(w.at(x.prec()));
    CHECK(rel(back, x) < c40.eps());
}

TEST_CASE("lambert oracles") {
    PrecisionContext ctx(40);
    long b = ctx.bits();
    for (auto& e : oracles()["lambert_w"]) {
        INFO(e["x"].get<std::string>());
        CHECK(rel(lambert_w0(real(e["x"], b), ctx), real(e["v"], b), 1) < 10 * ctx.eps());
    }
}

TEST_CASE("near the branch point") {
    PrecisionContext ctx(30);
    long b = ctx.bits();
    Real base = -1L / const_e(b);
    for (double d : {1e-12, 1e-6, 1e-3, 5e-3, 2e-2}) {
        Real x = base + d;
        Real w = lambert_w0(x, ctx);
        CHECK(w > -1.0);
        CHECK(abs(w * exp(w) - x).to_double() < 10 * ctx.eps());
    }
}

TEST_CASE("round trip, monotonicity on log-spaced samples") {
    PrecisionContext ctx(30);
    long b = ctx.bits();
    Real prev(-1.0, b);
    for (int k = -30; k <= 300; ++k) {
        Real x = pow(Real(10L, b), Real(k / 10.0, b));
        Real w = lambert_w0(x, ctx);
        Real err = abs(w * exp(w) - x);
        CHECK(err <= max(Real(1L, b), x) * Real(ctx.eps(), b));
        CHECK(w > prev);
        prev = w;
    }
}

TEST_CASE("doubling digits keeps earlier digits") {
    PrecisionContext c30(30), c60(60);
    for (const char* xs : {"0.5", "123.456", "1e20", "3.5e300"}) {
        Real a = lambert_w0(Real(std::string(xs), c30.bits()), c30);
        Real b = lambert_w0(Real(std::string(xs), c60.bits()), c60);
        CHECK(rel(a, b) < c30.eps());
    }
}

TEST_CASE("very large argument") {
    PrecisionContext ctx(100);
    Real x("1e100000", ctx.bits() + 64);
    Real w = lambert_w0(x, ctx);
    Real lhs = log(w.at(x.prec())) + w.at(x.prec());
    CHECK(rel(lhs, log(x)) < ctx.eps());
}
