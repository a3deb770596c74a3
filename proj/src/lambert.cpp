#include "critline/lambert.hpp"

#include <algorithm>
#include <cmath>

#include "critline/errors.hpp"

namespace critline {

namespace {

// one Halley step for w e^w - x at the precision of w
void halley(Real& w, const Real& x, Real& delta) {
    Real ew = exp(w);
    Real f = w * ew - x;
    Real wp1 = w + 1L;
    // f / (e^w (w+1) - (w+2) f / (2w+2))
    Real den = ew * wp1 - (w + 2L) * f / (wp1 * 2L);
    delta = f / den;
    w -= delta;
}

}  // namespace

Real lambert_w0(const Real& x_in, const PrecisionContext& ctx) {
    const long target = ctx.bits();
    Real x = x_in.at(target + 16);
    if (x.is_zero()) return Real(target);
    // d = e x + 1 measures the distance to the branch point -1/e
    Real d = const_e(target + 16) * x + 1L;
    if (d < -std::ldexp(1.0, -static_cast<int>(target))) throw DomainError("lambert_w0 needs x >= -1/e");
    if (d.sign() <= 0) return Real(-1L, target);

    // near the branch point dW/dx ~ 1/q with q = sqrt(2d); extra bits absorb that
    long extra = 0;
    if (d < 0.5) extra = std::max(0L, -(d.exponent() / 2)) + 8;

    long p = std::min<long>(target, bits_for_digits(30));
    Real xp = x.at(p + extra);
    Real w(p);
    Real e = const_e(p + extra);
    if (d < 0.01 * e.to_double()) {
        // series in q = sqrt(2(ex + 1)) about the branch point
        Real q = sqrt((e * xp + 1L) * 2L);
        w = -1L + q - q * q / 3L + q * q * q * 11L / 72L;
    } else if (xp > e) {
        Real lx = log(xp);
        w = lx - log(lx);
    } else {
        w = log1p(xp);
    }

    Real delta(p);
    for (;;) {
        w.set_prec(p + extra);
        xp = x.at(p + extra);
        // cubic convergence: a few steps settle each precision level
        for (int it = 0; it < 60; ++it) {
            halley(w, xp, delta);
            if (delta.is_zero() || delta.exponent() < w.exponent() - p + 3) break;
            if (it == 59) throw ConvergenceError("lambert_w0: Halley iteration stalled");
        }
        if (p >= target + 16) break;
        p = std::min(2 * p, target + 16);
    }
    // one more step at full precision to clean up the last bits
    halley(w, xp, delta);
    return w.at(target);
}

}  // namespace critline
