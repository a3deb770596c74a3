#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "critline/precision.hpp"

// Main sum of the Euler-Maclaurin zeta evaluation, sum_{n=1}^{N-1} n^{-s}.
//
// The serial kernels evaluate every term as exp(-s log n). The parallel ones
// use complete multiplicativity: prime terms come from exp, composites as
// a[n] = a[p] a[n/p] with p the smallest prime factor. Composites in
// [2^j, 2^(j+1)) only need indices below 2^j, so each dyadic range is one
// OpenMP loop. Partial sums are taken over fixed blocks and combined in block
// order, so the result does not depend on the thread count.
namespace critline::kernels {

enum class Mode { Serial, Parallel };

std::complex<double> main_sum_d(std::complex<double> s, long N, Mode mode = Mode::Parallel);

// Prime terms p^{-s} kept between calls on one vertical line. When the next
// ordinate is close, they are rotated by exp(-i dt log p) from a short Taylor
// series instead of fresh exp/sin/cos evaluations. The result then depends on
// the call sequence, so only callers with a fixed sequence should pass one.
struct PrimeState {
    long N = 0, bits = 0;
    Real sigma{64}, t{64};
    std::vector<Real> re, im;
    int updates = 0;
    bool valid() const { return N > 0; }
};

// result written to out at precision `bits`
void main_sum_mp(Complex& out, const Complex& s, long N, long bits, Mode mode = Mode::Parallel,
                 PrimeState* warm = nullptr);

// smallest prime factor table covering [0, n); cached and shared
std::shared_ptr<const std::vector<std::uint32_t>> spf_table(long n);

}  // namespace critline::kernels
