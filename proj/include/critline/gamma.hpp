#pragma once

#include "critline/precision.hpp"

namespace critline {

// Gamma on the whole plane minus the poles (PoleError carries the integer).
Complex gamma(const Complex& z, const PrecisionContext& ctx);

// log Gamma, continuous along vertical lines for Re z > 0 (the imaginary part
// is never reduced mod 2pi). Re z <= 0 recurs down from Re z > 0, which gives
// the standard branch with its cut on the negative real axis.
Complex log_gamma(const Complex& z, const PrecisionContext& ctx);

// Bare Stirling series without shifting; requires |Im z| >= 10 and throws
// AccuracyError when the smallest term is still above ctx.eps.
Complex log_gamma_stirling(const Complex& z, const PrecisionContext& ctx);

// psi(z) = Gamma'(z)/Gamma(z)
Complex digamma(const Complex& z, const PrecisionContext& ctx);

// Versions at an explicit binary precision, used internally.
Complex log_gamma_bits(const Complex& z, long bits);
Complex gamma_bits(const Complex& z, long bits);
Complex digamma_bits(const Complex& z, long bits);

}  // namespace critline
