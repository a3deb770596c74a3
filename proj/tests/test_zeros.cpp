#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "critline/errors.hpp"
#include "critline/zeros.hpp"
#include "critline/zeta.hpp"
#include "support.hpp"

using namespace critline;
using testing_support::data_path;
using testing_support::oracles;
using testing_support::real;
using testing_support::rel;

namespace {

// k-th sign change of Z by bisection on a fine grid
double kth_sign_change(int k) {
    double t = 1, f = fast::hardy_Z(t);
    int seen = 0;
    for (;;) {
        double t2 = t + 0.01, f2 = fast::hardy_Z(t2);
        if ((f < 0) != (f2 < 0) && ++seen == k) {
            double a = t, b = t2, fa = f;
            for (int i = 0; i < 60; ++i) {
                double m = (a + b) / 2, fm = fast::hardy_Z(m);
                if ((fm < 0) == (fa < 0)) a = m, fa = fm;
                else b = m;
            }
            return (a + b) / 2;
        }
        t = t2, f = f2;
    }
}

}  // namespace

TEST_CASE("offset constant") {
    // 11/8 is (n - 1) + 1/2 bookkeeping folded into n - 11/8
    CHECK(kZeroOffset == 1.375);
    CHECK(kZeroOffset == 11.0 / 8.0);
}

TEST_CASE("method names") {
    CHECK(parse_method("lambert") == Method::Lambert);
    CHECK(parse_method("trans") == Method::Transcendental);
    CHECK(parse_method("transcendental") == Method::Transcendental);
    CHECK(parse_method("refined") == Method::Refined);
    CHECK(std::string(method_name(Method::Refined)) == "refined");
    CHECK_THROWS(parse_method("newton"));
}

TEST_CASE("lambert estimates") {
    PrecisionContext ctx(30);
    CHECK(estimate_zero_lambert(1, ctx).y.fixed(2) == "14.52");
    CHECK(estimate_zero_lambert(10, ctx).y.fixed(1) == "50.2");
    PrecisionContext c40(40);
    Real n = Real("1e22", 200) + 1L;
    CHECK(estimate_zero_lambert(n, c40).y.fixed(2) == "1370919909931995308226.77");
    CHECK_THROWS_AS(estimate_zero_lambert(0, ctx), PreconditionError);
}

TEST_CASE("transcendental solutions") {
    PrecisionContext ctx(30);
    CHECK(solve_transcendental(1000, ctx).y.fixed(1) == "1419.5");
    CHECK(solve_transcendental(1000001, ctx).y.fixed(1) == "600270.2");
    auto z = solve_transcendental(12345, ctx);
    CHECK(z.method == Method::Transcendental);
    CHECK(abs(z.residual).to_double() < ctx.eps());
}

TEST_CASE("transcendental interleaving and gap scaling") {
    PrecisionContext ctx(20);
    double prev = solve_transcendental(1, ctx).y.to_double(), prev_gap = 0;
    for (long n = 2; n <= 10000; ++n) {
        double y = solve_transcendental(n, ctx).y.to_double();
        REQUIRE(y > prev);
        double gap = y - prev;
        if (n > 100 && n % 100 == 0) {
            double expect = 2 * M_PI / std::log(y / (2 * M_PI));
            CHECK(std::abs(gap / expect - 1) < 0.2);
        }
        prev = y, prev_gap = gap;
    }
    CHECK(prev_gap > 0);
}

TEST_CASE("refined zeros") {
    PrecisionContext c40(40);
    auto z1 = refine_zero(1, c40);
    CHECK(z1.y.fixed(32) == "14.13472514173469379045725198356247");
    CHECK(z1.method == Method::Refined);
    CHECK(abs(z1.residual).to_double() < refined_tolerance(14.13));

    PrecisionContext ctx(30);
    auto z2 = refine_zero(2, ctx);
    CHECK(std::abs(z2.y.to_double() - kth_sign_change(2)) < 1e-6);
    CHECK(refine_zero(100, ctx).y.fixed(1) == "236.5");
    CHECK_THROWS_AS(refine_zero(0, ctx), PreconditionError);
}

TEST_CASE("residual contract and monotone ordinates") {
    PrecisionContext ctx(30);
    double prev = 0;
    for (long n = 1; n <= 40; ++n) {
        auto r = refine_zero(n, ctx);
        CHECK(r.y > prev);
        CHECK(abs(r.residual).to_double() < refined_tolerance(r.y.to_double()));
        REQUIRE(std::abs(r.y.to_double()) > 0);
        // re-substitute: Z vanishes at the root
        CHECK(abs(hardy_Z(r.y, ctx)).to_double() < 1e-25);
        prev = r.y.to_double();

        auto t = solve_transcendental(n, ctx);
        CHECK(abs(t.residual).to_double() < ctx.eps());
    }
}

TEST_CASE("counting") {
    PrecisionContext ctx(30);
    long b = ctx.bits();
    CHECK(round(count_zeros(Real(14.0, b), false, ctx).total).to_long() == 0);
    CHECK(round(count_zeros(Real(14.2, b), false, ctx).total).to_long() == 1);
    auto c = count_zeros(Real(100L, b), true, ctx);
    REQUIRE(c.oracle_count.has_value());
    CHECK(*c.oracle_count == 29);
    CHECK(round(c.total).to_long() == 29);
    CHECK(rel(c.total, c.smooth + c.fluctuation) < 10 * ctx.eps());

    CHECK_THROWS_AS(count_zeros(real(oracles()["y1"], b), false, ctx), PreconditionError);
    CHECK_THROWS_AS(count_zeros(Real(5L, b), false, ctx), PreconditionError);

    for (long n = 1; n <= 30; ++n) {
        Real y = refine_zero(n, ctx).y + 0.01;
        CHECK(round(count_zeros(y, false, ctx).total).to_long() == n);
    }
}

TEST_CASE("gram points") {
    PrecisionContext ctx(30);
    Real g0 = gram_point(0, ctx);
    CHECK(std::abs(g0.to_double() - 17.8455) < 1e-4);
    CHECK(g0.sci(6).rfind("1.78456", 0) == 0);
    Real g5 = gram_point(5, ctx);
    Real th = riemann_siegel_theta(g5, ctx) - 5L * const_pi(g5.prec());
    CHECK(abs(th).to_double() < ctx.eps());
    CHECK(refine_zero(1, ctx).y < g0);
    CHECK(gram_point(6, ctx) > g5);
}

TEST_CASE("reference table parsing") {
    auto t = parse_reference_zeros("14.134725142\n21.022039639\n", "mem");
    CHECK(t.count() == 2);
    auto ix = parse_reference_zeros("# header\n1 14.134725142\n2 21.022039639  # second\n", "mem");
    CHECK(ix.count() == 2);
    CHECK(std::abs(ix.ordinates[1].to_double() - 21.022039639) < 1e-12);
    CHECK_THROWS_AS(parse_reference_zeros("", "mem"), ValidationError);
    CHECK_THROWS_AS(parse_reference_zeros("# only comments\n", "mem"), ValidationError);
    CHECK_THROWS_AS(parse_reference_zeros("21.022039639\n14.134725142\n", "mem"), ValidationError);
    CHECK_THROWS_AS(parse_reference_zeros("15.0\n21.0\n", "mem"), ValidationError);
    try {
        parse_reference_zeros("14.134725142\n21.0x\n", "mem");
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(load_reference_zeros(data_path("missing.txt")), ValidationError);
}

TEST_CASE("verification against the bundled table") {
    PrecisionContext ctx(30);
    auto table = load_reference_zeros(data_path("zeros_100.txt"));
    REQUIRE(table.count() == 100);

    auto lam = verify_against_reference(table, 100, Method::Lambert, ctx);
    CHECK(lam.rows.size() == 100);
    CHECK(lam.mismatches == 0);
    const auto& r10 = lam.rows[9];
    CHECK(std::abs(r10.y_ref.to_double() - 49.7738) < 1e-3);
    CHECK(r10.rel_err.to_double() < (50.2 - 49.7) / 49.7);

    auto ref = verify_against_reference(table, 25, Method::Refined, ctx);
    CHECK(ref.max_rel_err < 1e-8);
    CHECK(ref.mismatches == 0);

    CHECK_THROWS_AS(verify_against_reference(table, 101, Method::Lambert, ctx), PreconditionError);
}

TEST_CASE("refined beats transcendental") {
    PrecisionContext ctx(30);
    auto table = load_reference_zeros(data_path("zeros_100.txt"));
    auto ref = verify_against_reference(table, 100, Method::Refined, ctx);
    auto tr = verify_against_reference(table, 100, Method::Transcendental, ctx);
    int better = 0;
    for (int i = 0; i < 100; ++i)
        if (ref.rows[i].abs_err <= tr.rows[i].abs_err) ++better;
    CHECK(better >= 95);
}
