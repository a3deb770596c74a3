#include "critline/gamma.hpp"

#include <cmath>

#include "critline/bernoulli.hpp"
#include "critline/errors.hpp"

namespace critline {

namespace {

// Radius beyond which the Stirling series reaches 2^-bits.
double stirling_radius(long bits) { return bits * 0.6931471805599453 / (2 * M_PI) + 2.0; }

long guard_bits(const Complex& z) {
    double m = std::max(1.0, std::hypot(z.re.to_double(), z.im.to_double()));
    return static_cast<long>(std::ceil(std::log2(m * (1 + std::log(m)) + 1))) + 10;
}

void check_pole(const Complex& z) {
    if (z.im.is_zero() && z.re.is_integer() && z.re.sign() <= 0) {
        long n = z.re.to_long();
        throw PoleError("Gamma has a pole at " + std::to_string(n), n);
    }
}

double log2_mag(const Complex& z) { return static_cast<double>(std::max(z.re.exponent(), z.im.exponent())); }

struct SeriesResult {
    Complex value;
    double min_term_log2;  // log2 of the smallest term reached
    bool converged;
};

// (z-1/2)log z - z + log(2pi)/2 + sum B_{2k}/(2k(2k-1) z^(2k-1))
SeriesResult stirling(const Complex& z, long bits) {
    Complex lz = log(z);
    Complex acc = (z - 0.5) * lz - z;
    Real half_log_2pi = log(const_pi(bits) * 2L) / 2L;
    acc += half_log_2pi;
    Complex zinv = inv(z);
    Complex zinv2 = zinv * zinv;
    Complex pw = zinv;
    int cap = static_cast<int>(bits) + 20;
    auto coef = stirling_coefficients(std::min(cap, 64), bits);
    long target = -bits;
    double prev = 1e300;
    double scale = std::max(0.0, log2_mag(acc));
    for (int k = 1; k <= cap; ++k) {
        if (k > static_cast<int>(coef->size())) coef = stirling_coefficients(2 * k, bits);
        Complex term = pw * (*coef)[k - 1];
        double mag = log2_mag(term);
        if (mag > prev) return {acc, prev, false};
        acc += term;
        if (mag < target + scale) return {acc, mag, true};
        prev = mag;
        pw *= zinv2;
    }
    return {acc, prev, false};
}

Complex log_gamma_shifted(const Complex& zin, long bits) {
    Complex z = zin.at(bits);
    double r = stirling_radius(bits);
    double x = z.re.to_double(), y = std::fabs(z.im.to_double());
    long m = 0;
    if (std::hypot(x, y) < r) m = static_cast<long>(std::ceil(r - x));
    Complex shifted = z + m;
    auto s = stirling(shifted, bits);
    if (!s.converged) throw AccuracyError("Stirling series did not reach working precision", std::exp2(s.min_term_log2));
    Complex acc = s.value;
    if (m > 0) {
        // log prod (z+j): modulus from the product, phase as the sum of the
        // principal arguments, each in (-pi/2, pi/2) since Re(z+j) > 0
        Complex prod = z;
        Real phase = atan2(z.im, z.re);
        for (long j = 1; j < m; ++j) {
            Complex f = z + j;
            prod *= f;
            phase += atan2(f.im, f.re);
        }
        acc -= Complex(log(abs(prod)), phase);
    }
    return acc;
}

}  // namespace

Complex log_gamma_bits(const Complex& zin, long bits) {
    check_pole(zin);
    Complex z = zin.at(bits);
    if (z.re.sign() > 0) return log_gamma_shifted(z, bits);
    // log Gamma(z) = log Gamma(z + m) - sum log(z + k) with principal logs;
    // this is the branch analytic off the negative real axis
    long m = static_cast<long>(std::floor(-z.re.to_double())) + 1;
    long b = bits + guard_bits(z) + static_cast<long>(std::log2(double(m))) + 1;
    Complex zz = z.at(b);
    Complex out = log_gamma_shifted(zz + m, b);
    for (long k = 0; k < m; ++k) out -= log(zz + k);
    return out.at(bits);
}

Complex log_gamma(const Complex& z, const PrecisionContext& ctx) {
    long b = ctx.bits();
    return log_gamma_bits(z, b).at(b);
}

Complex gamma_bits(const Complex& zin, long bits) {
    check_pole(zin);
    long b = bits + guard_bits(zin);
    Complex z = zin.at(b);
    if (z.re < 0.5) {
        Real pi = const_pi(b);
        Complex s = sin(z * pi);
        Complex g1 = exp(log_gamma_shifted(1L - z, b));
        return (Complex(pi, Real(b)) / (s * g1)).at(bits);
    }
    return exp(log_gamma_shifted(z, b)).at(bits);
}

Complex gamma(const Complex& z, const PrecisionContext& ctx) { return gamma_bits(z, ctx.bits()); }

Complex log_gamma_stirling(const Complex& zin, const PrecisionContext& ctx) {
    if (std::fabs(zin.im.to_double()) < 10.0)
        throw PreconditionError("log_gamma_stirling needs |Im z| >= 10");
    long bits = ctx.bits();
    auto s = stirling(zin.at(bits), bits);
    double achieved = std::exp2(s.min_term_log2);
    if (!s.converged && achieved > ctx.eps())
        throw AccuracyError("Stirling series minimal term " + std::to_string(achieved) + " exceeds eps", achieved);
    return s.value;
}

Complex digamma_bits(const Complex& zin, long bits) {
    check_pole(zin);
    Complex z = zin.at(bits);
    if (z.re.sign() <= 0) {
        // psi(z) = psi(1 - z) - pi cot(pi z)
        Real pi = const_pi(bits);
        Complex pz = z * pi;
        return digamma_bits(1L - z, bits) - cos(pz) / sin(pz) * pi;
    }
    double r = stirling_radius(bits);
    double x = z.re.to_double(), y = std::fabs(z.im.to_double());
    long m = 0;
    if (std::hypot(x, y) < r) m = static_cast<long>(std::ceil(r - x));
    Complex w = z + m;
    // psi(w) = log w - 1/(2w) - sum B_{2k}/(2k w^{2k})
    Complex winv = inv(w);
    Complex winv2 = winv * winv;
    Complex acc = log(w) - winv / 2L;
    Complex pw = winv2;
    double prev = 1e300;
    int cap = static_cast<int>(bits) + 20;
    for (int k = 1; k <= cap; ++k) {
        Real b(bits);
        mpq_class q = bernoulli_2k(k) / mpq_class(2 * k);
        mpfr_set_q(b.get(), q.get_mpq_t(), MPFR_RNDN);
        Complex term = pw * b;
        double mag = log2_mag(term);
        if (mag > prev) throw AccuracyError("digamma series diverged", std::exp2(prev));
        acc -= term;
        if (mag < -bits) break;
        prev = mag;
        pw *= winv2;
    }
    for (long j = 0; j < m; ++j) acc -= inv(z + j);
    return acc;
}

Complex digamma(const Complex& z, const PrecisionContext& ctx) { return digamma_bits(z, ctx.bits()); }

}  // namespace critline
