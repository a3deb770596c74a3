#pragma once

#include <complex>

#include "critline/kernels.hpp"
#include "critline/precision.hpp"

namespace critline {

Complex zeta(const Complex& s, const PrecisionContext& ctx);
Complex chi(const Complex& s, const PrecisionContext& ctx);
Complex xi(const Complex& s, const PrecisionContext& ctx);

struct XiDecomposition {
    Real u, v;
};
XiDecomposition xi_uv(const Real& x, const Real& y, const PrecisionContext& ctx);

Real riemann_siegel_theta(const Real& t, const PrecisionContext& ctx);
Real riemann_siegel_theta_prime(const Real& t, const PrecisionContext& ctx);
Real hardy_Z(const Real& t, const PrecisionContext& ctx);
// e^{i theta(t)} zeta(1/2 + it) before the real part is taken
Complex hardy_Z_complex(const Real& t, const PrecisionContext& ctx);

struct PhaseRecord {
    Real t;
    Real theta;  // unreduced
    Real S;      // arg / pi
    Real arg;    // arg zeta(1/2 + it), continued from Re s = 2
    bool at_zero = false;
};

// Branch-continuous arg zeta(1/2 + it). Near a zero ordinate (|Z| under
// 1e-3 of the mean gap) returns the two-sided average and sets at_zero.
PhaseRecord arg_zeta_critical(const Real& t, const PrecisionContext& ctx);

// One-sided branch: arg zeta(1/2 + it) = -theta(t) + k pi. Throws
// ContinuationError if t sits on a zero ordinate.
long critical_branch(double t);

struct ChiHat {
    Real modulus;
    Real phase;  // unreduced
};
ChiHat chi_hat(const Real& a, const Real& y, const PrecisionContext& ctx);

// |cos(theta + theta') + (b + 1/b)/2| built from chi_hat at a and 1-a
Real offline_residual(const Real& a, const Real& y, const PrecisionContext& ctx);

// Internal evaluation at explicit binary precision.
Complex zeta_bits(const Complex& s, long bits, kernels::Mode mode = kernels::Mode::Parallel);
// same, reusing prime terms from the previous call on this line
Complex zeta_line_bits(const Complex& s, long bits, kernels::PrimeState& warm);
// (s-1) zeta(s), finite at s = 1
Complex zeta_times_sm1_bits(const Complex& s, long bits);
Real theta_bits(const Real& t, long bits);
// binary precision that keeps ctx.eps absolute on quantities of size |t| log |t|
long ordinate_bits(double t, const PrecisionContext& ctx);

// Double-precision companions used for bracketing and branch tracking.
namespace fast {
std::complex<double> zeta(std::complex<double> s);
double theta(double t);
double hardy_Z(double t);
// arg zeta(sigma + it) continued along 2 -> 2+it -> sigma+it
double arg_continued(double sigma, double t);
// mean zero spacing 2pi / log(t / 2pi), floored for small t
double mean_gap(double t);
}  // namespace fast

}  // namespace critline
