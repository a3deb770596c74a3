#include "critline/precision.hpp"

#include <cstdlib>
#include <memory>
#include <stdexcept>

#include "critline/errors.hpp"

namespace critline {

PrecisionContext::PrecisionContext(int digits) : digits_(digits) {
    if (digits < 15) throw PreconditionError("precision must be at least 15 digits, got " + std::to_string(digits));
}

long bits_for_digits(double digits) { return static_cast<long>(std::ceil(digits * 3.321928094887362)) + 8; }

long PrecisionContext::bits() const { return bits_for_digits(digits_) + 8; }

Real PrecisionContext::eps_real() const {
    Real r(bits());
    mpfr_set_si(r.get(), 10, MPFR_RNDN);
    mpfr_pow_si(r.get(), r.get(), 1 - digits_, MPFR_RNDN);
    return r;
}

Real::Real(const std::string& s, long prec) {
    mpfr_init2(v_, prec);
    if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
        mpfr_clear(v_);
        throw DomainError("not a decimal number: '" + s + "'");
    }
}

std::string Real::sci(int sig) const {
    if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", sig - 1, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

std::string Real::fixed(int decimals) const {
    if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rf", decimals, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

Real log(const Real& x) {
    if (x.sign() <= 0) throw DomainError("log of a non-positive real");
    return log_raw(x);
}

Real log1p(const Real& x) {
    if (x <= -1.0) throw DomainError("log1p at or below -1");
    return log1p_raw(x);
}

Real sqrt(const Real& x) {
    if (x.sign() < 0) throw DomainError("sqrt of a negative real");
    return sqrt_raw(x);
}

Real atan2(const Real& y, const Real& x) {
    if (x.is_zero() && y.is_zero()) throw DomainError("atan2(0, 0)");
    Real r(std::max(x.prec(), y.prec()));
    mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
    return r;
}

Real pow(const Real& x, const Real& y) {
    if (x.sign() < 0 && !y.is_integer()) throw DomainError("real power of a negative base");
    if (x.is_zero() && y.sign() <= 0) throw DomainError("non-positive power of zero");
    Real r(std::max(x.prec(), y.prec()));
    mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

Real pow(const Real& x, long n) {
    if (x.is_zero() && n <= 0) throw DomainError("non-positive power of zero");
    Real r(x.prec());
    mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
    return r;
}

Real hypot(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_hypot(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Real const_pi(long prec) {
    Real r(prec);
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}

Real const_e(long prec) {
    Real r(1L, prec);
    return exp(r);
}

Real const_log2(long prec) {
    Real r(prec);
    mpfr_const_log2(r.get(), MPFR_RNDN);
    return r;
}

Complex& Complex::operator*=(const Complex& o) {
    long p = std::max(prec(), o.prec());
    Real r(p), i(p);
    mpfr_fmms(r.get(), re.get(), o.re.get(), im.get(), o.im.get(), MPFR_RNDN);
    mpfr_fmma(i.get(), re.get(), o.im.get(), im.get(), o.re.get(), MPFR_RNDN);
    re = std::move(r);
    im = std::move(i);
    return *this;
}

Complex& Complex::operator/=(const Complex& o) {
    if (o.is_zero()) throw DomainError("complex division by zero");
    // scale by the larger component to keep the denominator in range
    Complex c = o;
    long e = std::max(c.re.exponent(), c.im.exponent());
    mpfr_mul_2si(c.re.get(), c.re.get(), -e, MPFR_RNDN);
    mpfr_mul_2si(c.im.get(), c.im.get(), -e, MPFR_RNDN);
    Real den = norm(c);
    *this *= conj(c);
    re /= den;
    im /= den;
    mpfr_mul_2si(re.get(), re.get(), -e, MPFR_RNDN);
    mpfr_mul_2si(im.get(), im.get(), -e, MPFR_RNDN);
    return *this;
}

Complex operator-(long a, const Complex& b) { return Complex(a - b.re, -b.im); }
Complex operator-(double a, const Complex& b) { return Complex(a - b.re, -b.im); }

Real abs(const Complex& z) { return hypot(z.re, z.im); }

Real norm(const Complex& z) {
    Real r(z.prec());
    mpfr_fmma(r.get(), z.re.get(), z.re.get(), z.im.get(), z.im.get(), MPFR_RNDN);
    return r;
}

Real arg(const Complex& z) {
    if (z.is_zero()) throw DomainError("argument of zero");
    return atan2(z.im, z.re);
}

Complex polar(const Real& r, const Real& phase) {
    Real s(phase.prec()), c(phase.prec());
    mpfr_sin_cos(s.get(), c.get(), phase.get(), MPFR_RNDN);
    return Complex(r * c, r * s);
}

Complex exp(const Complex& z) {
    Real m = exp(z.re);
    return polar(m, z.im);
}

Complex log(const Complex& z) {
    if (z.is_zero()) throw DomainError("log of zero");
    Real m = abs(z);
    return Complex(log(m), atan2(z.im, z.re));
}

Complex sin(const Complex& z) {
    Real s(z.prec()), c(z.prec());
    mpfr_sin_cos(s.get(), c.get(), z.re.get(), MPFR_RNDN);
    return Complex(s * cosh(z.im), c * sinh(z.im));
}

Complex cos(const Complex& z) {
    Real s(z.prec()), c(z.prec());
    mpfr_sin_cos(s.get(), c.get(), z.re.get(), MPFR_RNDN);
    return Complex(c * cosh(z.im), -(s * sinh(z.im)));
}

Complex sinh(const Complex& z) {
    Real s(z.prec()), c(z.prec());
    mpfr_sin_cos(s.get(), c.get(), z.im.get(), MPFR_RNDN);
    return Complex(sinh(z.re) * c, cosh(z.re) * s);
}

Complex cosh(const Complex& z) {
    Real s(z.prec()), c(z.prec());
    mpfr_sin_cos(s.get(), c.get(), z.im.get(), MPFR_RNDN);
    return Complex(cosh(z.re) * c, sinh(z.re) * s);
}

Complex sqrt(const Complex& z) {
    if (z.is_zero()) return Complex(z.prec());
    // principal root, cut along the negative real axis
    Real m = abs(z);
    Real a = sqrt_raw((m + abs(z.re)) / 2L);
    Real b = z.im / (2L * a);
    if (z.re.sign() >= 0) return Complex(a, b);
    Real br = abs(b);
    return z.im.sign() >= 0 ? Complex(br, a) : Complex(br, -a);
}

Complex inv(const Complex& z) {
    Complex one(z.prec());
    mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
    return one / z;
}

Complex pow(const Complex& z, const Complex& w) {
    if (z.is_zero()) {
        if (w.re.sign() > 0) return Complex(z.prec());
        throw DomainError("power of zero with non-positive real exponent");
    }
    return exp(w * log(z));
}

Complex pow(const Real& x, const Complex& w) {
    if (x.sign() <= 0) return pow(Complex(x, Real(x.prec())), w);
    return exp(w * log(x));
}

Complex elementary(Fn fn, const Complex& x, const PrecisionContext& ctx) {
    Complex z = x.at(ctx.bits());
    switch (fn) {
        case Fn::Exp: return exp(z);
        case Fn::Log: return log(z);
        case Fn::Sin: return sin(z);
        case Fn::Cos: return cos(z);
        case Fn::Sinh: return sinh(z);
        case Fn::Cosh: return cosh(z);
        case Fn::Sqrt: return sqrt(z);
        case Fn::Atan2: return Complex(arg(z), Real(ctx.bits()));
    }
    throw DomainError("unsupported elementary function");
}

Complex power(const Complex& x, const Complex& y, const PrecisionContext& ctx) {
    return pow(x.at(ctx.bits()), y.at(ctx.bits()));
}

}  // namespace critline
