#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace critline {

class Real;

// Working precision in decimal digits. eps and the binary precision are always
// derived from `digits`, so they cannot drift apart.
class PrecisionContext {
public:
    explicit PrecisionContext(int digits = 30);

    int digits() const { return digits_; }
    // binary precision including a small guard
    long bits() const;
    // 10^(1-digits) as a double; 0 once it underflows (digits > 308)
    double eps() const { return std::pow(10.0, 1 - digits_); }
    Real eps_real() const;
    PrecisionContext with_digits(int d) const { return PrecisionContext(d); }
    PrecisionContext plus_digits(int d) const { return PrecisionContext(digits_ + d); }

private:
    int digits_;
};

long bits_for_digits(double digits);

class Real {
public:
    explicit Real(long prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(double x, long prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(long x, long prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(int x, long prec) : Real(static_cast<long>(x), prec) {}
    Real(const std::string& s, long prec);
    Real(const Real& o, long prec) { mpfr_init2(v_, prec); mpfr_set(v_, o.v_, MPFR_RNDN); }

    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept {
        v_[0] = o.v_[0];
        o.v_->_mpfr_d = nullptr;
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            if (v_->_mpfr_d == nullptr) mpfr_init2(v_, mpfr_get_prec(o.v_));
            else if (prec() != o.prec()) mpfr_set_prec(v_, o.prec());
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        std::swap(v_[0], o.v_[0]);
        return *this;
    }
    ~Real() {
        if (v_->_mpfr_d != nullptr) mpfr_clear(v_);
    }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    long prec() const { return mpfr_get_prec(v_); }
    // changes precision keeping the (rounded) value
    void set_prec(long p) { mpfr_prec_round(v_, p, MPFR_RNDN); }
    Real at(long p) const { return Real(*this, p); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_integer() const { return mpfr_integer_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    // base-2 exponent (value in [2^(e-1), 2^e)); very negative for zero
    long exponent() const { return is_zero() ? -(1L << 40) : mpfr_get_exp(v_); }

    // sig significant decimal digits, mantissa/exponent form "d.ddd e[+-]x"
    std::string sci(int sig) const;
    // fixed-point with `decimals` fractional digits
    std::string fixed(int decimals) const;

    Real operator-() const {
        Real r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real& operator+=(const Real& o) { return op(mpfr_add, o); }
    Real& operator-=(const Real& o) { return op(mpfr_sub, o); }
    Real& operator*=(const Real& o) { return op(mpfr_mul, o); }
    Real& operator/=(const Real& o) { return op(mpfr_div, o); }
    Real& operator+=(long x) { mpfr_add_si(v_, v_, x, MPFR_RNDN); return *this; }
    Real& operator-=(long x) { mpfr_sub_si(v_, v_, x, MPFR_RNDN); return *this; }
    Real& operator*=(long x) { mpfr_mul_si(v_, v_, x, MPFR_RNDN); return *this; }
    Real& operator/=(long x) { mpfr_div_si(v_, v_, x, MPFR_RNDN); return *this; }
    Real& operator+=(double x) { mpfr_add_d(v_, v_, x, MPFR_RNDN); return *this; }
    Real& operator-=(double x) { mpfr_sub_d(v_, v_, x, MPFR_RNDN); return *this; }
    Real& operator*=(double x) { mpfr_mul_d(v_, v_, x, MPFR_RNDN); return *this; }
    Real& operator/=(double x) { mpfr_div_d(v_, v_, x, MPFR_RNDN); return *this; }

private:
    template <class F>
    Real& op(F f, const Real& o) {
        if (o.prec() > prec()) set_prec(o.prec());
        f(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    mpfr_t v_;
};

inline Real operator+(Real a, const Real& b) { return a += b; }
inline Real operator-(Real a, const Real& b) { return a -= b; }
inline Real operator*(Real a, const Real& b) { return a *= b; }
inline Real operator/(Real a, const Real& b) { return a /= b; }
inline Real operator+(Real a, long b) { return a += b; }
inline Real operator-(Real a, long b) { return a -= b; }
inline Real operator*(Real a, long b) { return a *= b; }
inline Real operator/(Real a, long b) { return a /= b; }
inline Real operator+(Real a, int b) { return a += long(b); }
inline Real operator-(Real a, int b) { return a -= long(b); }
inline Real operator*(Real a, int b) { return a *= long(b); }
inline Real operator/(Real a, int b) { return a /= long(b); }
inline Real operator+(Real a, double b) { return a += b; }
inline Real operator-(Real a, double b) { return a -= b; }
inline Real operator*(Real a, double b) { return a *= b; }
inline Real operator/(Real a, double b) { return a /= b; }
inline Real operator+(long a, Real b) { return b += a; }
inline Real operator*(long a, Real b) { return b *= a; }
inline Real operator+(int a, Real b) { return b += long(a); }
inline Real operator*(int a, Real b) { return b *= long(a); }
inline Real operator*(double a, Real b) { return b *= a; }
inline Real operator-(long a, const Real& b) {
    Real r(b.prec());
    mpfr_si_sub(r.get(), a, b.get(), MPFR_RNDN);
    return r;
}
inline Real operator-(int a, const Real& b) { return long(a) - b; }
inline Real operator-(double a, const Real& b) {
    Real r(b.prec());
    mpfr_d_sub(r.get(), a, b.get(), MPFR_RNDN);
    return r;
}
inline Real operator/(long a, const Real& b) {
    Real r(b.prec());
    mpfr_si_div(r.get(), a, b.get(), MPFR_RNDN);
    return r;
}
inline Real operator/(int a, const Real& b) { return long(a) / b; }
inline Real operator/(double a, const Real& b) {
    Real r(b.prec());
    mpfr_d_div(r.get(), a, b.get(), MPFR_RNDN);
    return r;
}

inline bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()); }
inline bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.get(), b.get()); }
inline bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()); }
inline bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.get(), b.get()); }
inline bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()); }
inline bool operator!=(const Real& a, const Real& b) { return !(a == b); }
inline bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) < 0; }
inline bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) > 0; }
inline bool operator<=(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) <= 0; }
inline bool operator>=(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) >= 0; }
inline bool operator==(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) == 0; }

// unary mpfr functions, result at the argument's precision
#define CRITLINE_UNARY(name, fn)                   \
    inline Real name(const Real& x) {              \
        Real r(x.prec());                          \
        fn(r.get(), x.get(), MPFR_RNDN);           \
        return r;                                  \
    }
CRITLINE_UNARY(exp, mpfr_exp)
CRITLINE_UNARY(log_raw, mpfr_log)
CRITLINE_UNARY(sin, mpfr_sin)
CRITLINE_UNARY(cos, mpfr_cos)
CRITLINE_UNARY(tan, mpfr_tan)
CRITLINE_UNARY(sinh, mpfr_sinh)
CRITLINE_UNARY(cosh, mpfr_cosh)
CRITLINE_UNARY(atan, mpfr_atan)
CRITLINE_UNARY(sqrt_raw, mpfr_sqrt)
CRITLINE_UNARY(abs, mpfr_abs)
CRITLINE_UNARY(sqr, mpfr_sqr)
CRITLINE_UNARY(expm1, mpfr_expm1)
CRITLINE_UNARY(log1p_raw, mpfr_log1p)
#undef CRITLINE_UNARY

inline Real floor(const Real& x) {
    Real r(x.prec());
    mpfr_floor(r.get(), x.get());
    return r;
}
inline Real round(const Real& x) {
    Real r(x.prec());
    mpfr_round(r.get(), x.get());
    return r;
}
inline Real ceil(const Real& x) {
    Real r(x.prec());
    mpfr_ceil(r.get(), x.get());
    return r;
}

// real log/sqrt with explicit domain errors
Real log(const Real& x);
Real sqrt(const Real& x);
Real log1p(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real hypot(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

Real const_pi(long prec);
Real const_e(long prec);
Real const_log2(long prec);

struct Complex {
    Real re, im;

    explicit Complex(long prec = 64) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(double r, double i, long prec) : re(r, prec), im(i, prec) {}
    Complex(const Complex& o, long prec) : re(o.re, prec), im(o.im, prec) {}
    Complex(const Complex&) = default;
    Complex(Complex&&) noexcept = default;
    Complex& operator=(const Complex&) = default;
    Complex& operator=(Complex&&) noexcept = default;

    long prec() const { return std::max(re.prec(), im.prec()); }
    Complex at(long p) const { return Complex(*this, p); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    Complex operator-() const { return Complex(-re, -im); }
    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o);
    Complex& operator/=(const Complex& o);
    Complex& operator*=(const Real& o) { re *= o; im *= o; return *this; }
    Complex& operator/=(const Real& o) { re /= o; im /= o; return *this; }
    Complex& operator+=(const Real& o) { re += o; return *this; }
    Complex& operator-=(const Real& o) { re -= o; return *this; }
    Complex& operator*=(long o) { re *= o; im *= o; return *this; }
    Complex& operator/=(long o) { re /= o; im /= o; return *this; }
    Complex& operator+=(long o) { re += o; return *this; }
    Complex& operator-=(long o) { re -= o; return *this; }
    Complex& operator*=(double o) { re *= o; im *= o; return *this; }
    Complex& operator+=(double o) { re += o; return *this; }
    Complex& operator-=(double o) { re -= o; return *this; }
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator/(Complex a, const Complex& b) { return a /= b; }
inline Complex operator*(Complex a, const Real& b) { return a *= b; }
inline Complex operator*(const Real& b, Complex a) { return a *= b; }
inline Complex operator/(Complex a, const Real& b) { return a /= b; }
inline Complex operator+(Complex a, const Real& b) { return a += b; }
inline Complex operator-(Complex a, const Real& b) { return a -= b; }
inline Complex operator+(Complex a, long b) { return a += b; }
inline Complex operator-(Complex a, long b) { return a -= b; }
inline Complex operator*(Complex a, long b) { return a *= b; }
inline Complex operator/(Complex a, long b) { return a /= b; }
inline Complex operator+(Complex a, double b) { return a += b; }
inline Complex operator-(Complex a, double b) { return a -= b; }
inline Complex operator*(Complex a, double b) { return a *= b; }
Complex operator-(long a, const Complex& b);
Complex operator-(double a, const Complex& b);

inline Complex conj(const Complex& z) { return Complex(z.re, -z.im); }
Real abs(const Complex& z);
Real norm(const Complex& z);
// principal argument in (-pi, pi]; arg(0) is a domain error
Real arg(const Complex& z);
Complex polar(const Real& r, const Real& phase);
Complex exp(const Complex& z);
Complex log(const Complex& z);
Complex sin(const Complex& z);
Complex cos(const Complex& z);
Complex sinh(const Complex& z);
Complex cosh(const Complex& z);
Complex sqrt(const Complex& z);
Complex pow(const Complex& z, const Complex& w);
Complex pow(const Real& x, const Complex& w);
Complex inv(const Complex& z);

enum class Fn { Exp, Log, Sin, Cos, Sinh, Cosh, Sqrt, Atan2 };

// Evaluates fn at x with ctx precision. Atan2 returns the principal argument
// of x as a real-valued complex. Domain violations throw DomainError.
Complex elementary(Fn fn, const Complex& x, const PrecisionContext& ctx);
Complex power(const Complex& x, const Complex& y, const PrecisionContext& ctx);

}  // namespace critline
