#include "critline/zeta.hpp"

#include <cmath>

#include "critline/bernoulli.hpp"
#include "critline/errors.hpp"
#include "critline/gamma.hpp"

namespace critline {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

long exp2_of(const Complex& z) { return std::max(z.re.exponent(), z.im.exponent()); }

long round_bits(long b) { return (b + 63) / 64 * 64; }

// Euler-Maclaurin cutoff. With N = 0.2|t| the Bernoulli terms still shrink by
// |s + 2k|^2 / (2 pi N)^2 < 0.64 each; the digits term covers small |t|.
long em_cutoff(double t, long bits) {
    double digits = bits * 0.30103;
    return std::max<long>(20, static_cast<long>(std::ceil(0.2 * std::fabs(t) + 2.0 * digits)));
}

// zeta(s), or (s-1) zeta(s) when `times_sm1`, for Re s >= 0.
Complex zeta_em(const Complex& s_in, long bits, bool times_sm1, kernels::Mode mode,
                kernels::PrimeState* warm = nullptr) {
    double t = std::fabs(s_in.im.to_double());
    long N = em_cutoff(t, bits);
    // phases t log n need log2(t log N) extra bits; the sum adds sqrt(N) ulps
    long wb = round_bits(bits + static_cast<long>(std::ceil(std::log2((t + 2.0) * std::log(double(N))))) +
                         static_cast<long>(std::ceil(0.5 * std::log2(static_cast<double>(N)))) + 6);
    Complex s = s_in.at(wb);

    Complex sum(wb);
    kernels::main_sum_mp(sum, s, N, wb, mode, warm);

    Real logN(wb);
    mpfr_log_ui(logN.get(), N, MPFR_RNDN);
    Complex npow = exp(-(s * logN));  // N^{-s}
    Real Nr(N, wb);

    // correction terms: 1/2 N^{-s} + sum_k B_2k/(2k)! s(s+1)..(s+2k-2) N^{-s-2k+1}
    Complex corr = npow / 2L;
    Complex x = s * npow / Nr;
    Real N2 = Nr * Nr;
    int cap = 4 * static_cast<int>(wb) + 40;
    auto beta = bernoulli_over_factorial(std::min(cap, 64), wb);
    long floor_exp = std::max(0L, exp2_of(sum)) - wb;
    long prev = 1L << 40;
    bool done = false;
    for (int k = 1; k <= cap; ++k) {
        if (k > static_cast<int>(beta->size())) beta = bernoulli_over_factorial(2 * k, wb);
        Complex term = x * (*beta)[k - 1];
        long e = exp2_of(term);
        if (k > 2 && e > prev)
            throw AccuracyError("Euler-Maclaurin tail stopped decreasing", std::ldexp(1.0, static_cast<int>(prev)));
        corr += term;
        if (e < floor_exp || term.is_zero()) {
            done = true;
            break;
        }
        prev = e;
        x *= (s + long(2 * k - 1)) * (s + long(2 * k));
        x /= N2;
    }
    if (!done) throw AccuracyError("Euler-Maclaurin tail did not converge", std::ldexp(1.0, static_cast<int>(prev)));

    Complex head = Nr * npow;  // N^{1-s}
    if (times_sm1) {
        Complex sm1 = s - 1L;
        return (sm1 * (sum + corr) + head).at(bits);
    }
    Complex sm1 = s - 1L;
    return (sum + corr + head / sm1).at(bits);
}

bool is_neg_even_integer(const Complex& s) {
    if (!s.im.is_zero() || !s.re.is_integer() || s.re.sign() >= 0) return false;
    Real h = s.re / 2L;
    return h.is_integer();
}

bool is_one(const Complex& s) { return s.im.is_zero() && mpfr_cmp_ui(s.re.get(), 1) == 0; }

long size_guard(const Complex& s) {
    double m = std::hypot(s.re.to_double(), s.im.to_double()) + 2.0;
    return static_cast<long>(std::ceil(std::log2(m * std::log(m) + 2.0))) + 8;
}

}  // namespace

long ordinate_bits(double t, const PrecisionContext& ctx) {
    double m = std::fabs(t) + 2.0;
    return ctx.bits() + static_cast<long>(std::ceil(std::log2(m * std::log(m) + 2.0))) + 4;
}

Complex zeta_bits(const Complex& s, long bits, kernels::Mode mode) {
    if (is_one(s)) throw PoleError("zeta has a pole at s = 1", 1);
    if (is_neg_even_integer(s)) return Complex(bits);
    if (s.re.sign() >= 0) return zeta_em(s, bits, false, mode);
    // zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)
    long b = bits + size_guard(s);
    Complex z = s.at(b);
    Real pi = const_pi(b);
    Complex oms = 1L - z;
    Complex f = pow(Real(2L, b), z) * pow(pi, z - 1L) * sin(z * pi / 2L) * gamma_bits(oms, b) *
                zeta_em(oms, b, false, mode);
    return f.at(bits);
}

Complex zeta_line_bits(const Complex& s, long bits, kernels::PrimeState& warm) {
    if (s.re.sign() < 0) throw PreconditionError("warm evaluation needs Re s >= 0");
    return zeta_em(s, bits, false, kernels::Mode::Parallel, &warm);
}

Complex zeta_times_sm1_bits(const Complex& s, long bits) {
    if (s.re.sign() >= 0) return zeta_em(s, bits, true, kernels::Mode::Parallel);
    return zeta_bits(s, bits) * (s - 1L);
}

Complex zeta(const Complex& s, const PrecisionContext& ctx) { return zeta_bits(s, ctx.bits()); }

Complex chi(const Complex& s, const PrecisionContext& ctx) {
    if (s.im.is_zero() && s.re.is_zero()) throw PoleError("chi has a pole at s = 0", 0);
    if (is_one(s)) throw PoleError("chi has a pole at s = 1", 1);
    if (s.re.sign() < 0) return chi(1L - s, ctx);
    long bits = ctx.bits();
    long b = bits + size_guard(s);
    Complex z = s.at(b);
    Real pi = const_pi(b);
    Complex out = pow(pi, -(z / 2L)) * gamma_bits(z / 2L, b) * zeta_bits(z, b);
    return out.at(bits);
}

Complex xi(const Complex& s, const PrecisionContext& ctx) {
    long bits = ctx.bits();
    if (s.re.sign() < 0) return xi(1L - s.at(bits + size_guard(s)), ctx);
    long b = bits + size_guard(s);
    Complex z = s.at(b);
    Real pi = const_pi(b);
    // 1/2 s(s-1) pi^{-s/2} Gamma(s/2) zeta(s) = pi^{-s/2} Gamma(1+s/2) (s-1) zeta(s)
    Complex out = pow(pi, -(z / 2L)) * gamma_bits(z / 2L + 1L, b) * zeta_times_sm1_bits(z, b);
    return out.at(bits);
}

XiDecomposition xi_uv(const Real& x, const Real& y, const PrecisionContext& ctx) {
    Complex v = xi(Complex(x, y), ctx);
    return {std::move(v.re), std::move(v.im)};
}

Real theta_bits(const Real& t, long bits) {
    Complex z(Real(0.25, bits), t.at(bits) / 2L);
    Complex lg = log_gamma_bits(z, bits);
    Real pi = const_pi(bits);
    return lg.im - t.at(bits) / 2L * log(pi);
}

Real riemann_siegel_theta(const Real& t, const PrecisionContext& ctx) {
    if (t.sign() <= 0) throw DomainError("theta needs t > 0");
    return theta_bits(t, ordinate_bits(t.to_double(), ctx));
}

Real riemann_siegel_theta_prime(const Real& t, const PrecisionContext& ctx) {
    if (t.sign() <= 0) throw DomainError("theta' needs t > 0");
    long b = ordinate_bits(t.to_double(), ctx);
    Complex z(Real(0.25, b), t.at(b) / 2L);
    Complex psi = digamma_bits(z, b);
    return psi.re / 2L - log(const_pi(b)) / 2L;
}

Complex hardy_Z_complex(const Real& t, const PrecisionContext& ctx) {
    if (t.sign() <= 0) throw DomainError("Z needs t > 0");
    long b = ordinate_bits(t.to_double(), ctx);
    Real th = theta_bits(t, b);
    Complex z = zeta_bits(Complex(Real(0.5, b), t.at(b)), ctx.bits());
    return (polar(Real(1L, b), th) * z).at(ctx.bits());
}

Real hardy_Z(const Real& t, const PrecisionContext& ctx) { return hardy_Z_complex(t, ctx).re; }

namespace fast {

namespace {

std::complex<double> lgamma_c(std::complex<double> z) {
    // Re z > 0 only; shift up to |z| >= 12, then Stirling
    std::complex<double> shift = 0.0;
    double phase = 0.0;
    while (std::abs(z) < 12.0) {
        shift += std::log(std::abs(z));
        phase += std::arg(z);
        z += 1.0;
    }
    std::complex<double> zi = 1.0 / z, zi2 = zi * zi;
    std::complex<double> ser =
        zi * (1.0 / 12 + zi2 * (-1.0 / 360 + zi2 * (1.0 / 1260 + zi2 * (-1.0 / 1680 + zi2 * (1.0 / 1188)))));
    std::complex<double> v = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2 * kPi) + ser;
    return v - std::complex<double>(shift.real(), phase);
}

}  // namespace

double theta(double t) {
    if (t >= 8.0) {
        double ti = 1.0 / t, t2 = ti * ti;
        double ser = ti * (1.0 / 48 + t2 * (7.0 / 5760 + t2 * (31.0 / 80640 + t2 * (127.0 / 430080 + t2 * (511.0 / 1216512)))));
        return t / 2 * std::log(t / (2 * kPi)) - t / 2 - kPi / 8 + ser;
    }
    return lgamma_c({0.25, t / 2}).imag() - t / 2 * std::log(kPi);
}

std::complex<double> zeta(std::complex<double> s) {
    const auto& beta = bernoulli_over_factorial_d();
    double t = std::fabs(s.imag());
    long N = std::max<long>(20, static_cast<long>(0.25 * t + 30));
    std::complex<double> acc = kernels::main_sum_d(s, N);
    double Nd = static_cast<double>(N);
    std::complex<double> npow = std::exp(-s * std::log(Nd));
    acc += Nd * npow / (s - 1.0) + 0.5 * npow;
    std::complex<double> x = s * npow / Nd;
    for (std::size_t k = 1; k <= beta.size(); ++k) {
        std::complex<double> term = beta[k - 1] * x;
        acc += term;
        if (std::abs(term) < 1e-17 * std::max(1.0, std::abs(acc))) break;
        x *= (s + double(2 * k - 1)) * (s + double(2 * k)) / (Nd * Nd);
    }
    return acc;
}

double hardy_Z(double t) {
    std::complex<double> z = zeta({0.5, t});
    return (std::polar(1.0, theta(t)) * z).real();
}

double arg_continued(double sigma, double t) {
    std::complex<double> prev = zeta({2.0, t});
    // Re zeta(2 + it) > 0, so the principal value is the continued one
    double a = std::arg(prev);
    double x = 2.0, h = 0.5;
    const double dir = sigma < x ? -1.0 : 1.0;
    while (std::fabs(x - sigma) > 0.0) {
        double step = std::min(h, std::fabs(x - sigma));
        double nx = (step == std::fabs(x - sigma)) ? sigma : x + dir * step;
        std::complex<double> cur = zeta({nx, t});
        if (cur == 0.0) throw ContinuationError("continuation hit an exact zero of zeta");
        double d = std::arg(cur / prev);
        if (std::fabs(d) > kPi / 4) {
            h = step / 2;
            if (h < 1e-13) throw ContinuationError("continuation step underflow near t = " + std::to_string(t));
            continue;
        }
        a += d;
        x = nx;
        prev = cur;
        h = std::min(0.5, 2 * step);
    }
    return a;
}

double mean_gap(double t) { return 2 * kPi / std::log(std::max(t, 2 * kPi * std::exp(2.0)) / (2 * kPi)); }

}  // namespace fast

long critical_branch(double t) {
    if (t <= 0) throw DomainError("critical_branch needs t > 0");
    double a = fast::arg_continued(0.5, t);
    double th = fast::theta(t);
    double kf = (a + th) / kPi;
    long k = std::lround(kf);
    if (std::fabs(kf - k) > 0.25)
        throw ContinuationError("continued phase is not on the real-Z lattice at t = " + std::to_string(t));
    return k;
}

PhaseRecord arg_zeta_critical(const Real& t, const PrecisionContext& ctx) {
    long bits = ctx.bits();
    PhaseRecord rec{t.at(bits), Real(bits), Real(bits), Real(bits), false};
    if (t.sign() < 0) throw PreconditionError("arg_zeta_critical needs t >= 0");
    // zero-length vertical leg: the path stays at arg zeta(2) = 0
    if (t.is_zero()) return rec;

    long b = ordinate_bits(t.to_double(), ctx);
    Real pi = const_pi(b);
    rec.theta = riemann_siegel_theta(t, ctx);
    double td = t.to_double();
    double window = 1e-3 * 2 * kPi / std::log(std::max(td, 3.0));
    double zd = fast::hardy_Z(td);

    long k;
    if (std::fabs(zd) < window) {
        // locate the nearby sign change, then read the branch just below and above it
        double gap = fast::mean_gap(td);
        double w = 0.02 * gap, lo = 0, hi = 0;
        bool found = false;
        for (int i = 0; i < 5 && !found; ++i, w *= 2) {
            lo = td - w;
            hi = td + w;
            double flo = fast::hardy_Z(lo), fhi = fast::hardy_Z(hi);
            if (flo * fhi < 0) {
                for (int j = 0; j < 200 && hi - lo > 1e-13 * std::max(1.0, td); ++j) {
                    double mid = 0.5 * (lo + hi);
                    double fm = fast::hardy_Z(mid);
                    if (fm * flo <= 0) hi = mid;
                    else {
                        lo = mid;
                        flo = fm;
                    }
                }
                found = true;
            }
        }
        if (found) {
            double ystar = 0.5 * (lo + hi);
            double delta = 1e-4 * gap;
            long km = critical_branch(ystar - delta);
            long kp = critical_branch(ystar + delta);
            if (kp != km + 1)
                throw ContinuationError("branch does not step by one across the zero near t = " + std::to_string(td));
            rec.at_zero = true;
            Real avg = (Real(km, b) + 0.5) * pi - rec.theta.at(b);
            rec.arg = avg.at(bits);
            rec.S = (avg / pi).at(bits);
            return rec;
        }
    }
    k = critical_branch(td);
    Real a = Real(k, b) * pi - rec.theta.at(b);
    rec.arg = a.at(bits);
    rec.S = (a / pi).at(bits);
    return rec;
}

namespace {

// arg zeta(a + iy); `unreduced` picks the continued branch, otherwise principal
Real arg_zeta_at(const Real& a, const Real& y, const PrecisionContext& ctx, long b, bool unreduced) {
    if (mpfr_cmp_d(a.get(), 0.5) == 0) return arg_zeta_critical(y, ctx).arg.at(b);
    Complex z = zeta_bits(Complex(a.at(b), y.at(b)), b);
    Real p = arg(z);
    if (!unreduced) return p;
    double cont = fast::arg_continued(a.to_double(), y.to_double());
    double k = std::round((cont - p.to_double()) / (2 * kPi));
    return p + const_pi(b) * 2L * static_cast<long>(k);
}

ChiHat chi_hat_impl(const Real& a, const Real& y, const PrecisionContext& ctx, bool unreduced) {
    if (y < 10.0) throw RegimeError("chi_hat needs y >= 10");
    if (a < 0.0 || a > 1.0) throw PreconditionError("chi_hat needs 0 <= a <= 1");
    long b = ordinate_bits(y.to_double(), ctx);
    Real ab = a.at(b), yb = y.at(b);
    Real pi = const_pi(b);
    Real one_m_a = 1L - ab;
    Complex z = zeta_bits(Complex(ab, yb), b);
    Real half_y = yb / 2L;
    // sqrt2 pi^((1-a)/2) (y/2)^((a-1)/2) e^{-y pi/4} |zeta|
    Real mod = sqrt(Real(2L, b)) * pow(pi, one_m_a / 2L) * pow(half_y, -(one_m_a / 2L)) *
               exp(-(yb * pi / 4L)) * abs(z);
    Real az = arg_zeta_at(ab, yb, ctx, b, unreduced);
    Real phase = half_y * log(yb / (pi * 2L * const_e(b))) - one_m_a * pi / 4L + az;
    return {mod.at(ctx.bits()), phase};
}

}  // namespace

ChiHat chi_hat(const Real& a, const Real& y, const PrecisionContext& ctx) { return chi_hat_impl(a, y, ctx, true); }

Real offline_residual(const Real& a, const Real& y, const PrecisionContext& ctx) {
    if (y < 10.0) throw RegimeError("offline_residual needs y >= 10");
    if (a <= 0.0 || a >= 1.0) throw PreconditionError("offline_residual needs 0 < a < 1");
    long b = ordinate_bits(y.to_double(), ctx);
    Real ab = a.at(b);
    bool on_line = mpfr_cmp_d(ab.get(), 0.5) == 0;
    // only cos(theta + theta') enters, so principal phases suffice off the line
    ChiHat h = chi_hat_impl(ab, y, ctx, false);
    Real one(1L, b);
    if (on_line) {
        Real c = cos(h.phase * 2L);
        return abs(c + 1L).at(ctx.bits());
    }
    ChiHat hr = chi_hat_impl(1L - ab, y, ctx, false);
    Real ratio(b);
    if (h.modulus.is_zero() || hr.modulus.is_zero()) {
        Real d = y.at(b) * 1e-6;
        Real acc(b);
        for (int sgn : {-1, 1}) {
            Real yy = y.at(b) + d * long(sgn);
            ChiHat p = chi_hat_impl(ab, yy, ctx, false), q = chi_hat_impl(1L - ab, yy, ctx, false);
            acc += q.modulus / p.modulus;
        }
        ratio = acc / 2L;
    } else {
        ratio = hr.modulus.at(b) / h.modulus.at(b);
    }
    Real c = cos(h.phase + hr.phase);
    Real bb = (ratio + one / ratio) / 2L;
    return abs(c + bb).at(ctx.bits());
}

}  // namespace critline
