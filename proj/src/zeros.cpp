#include "critline/zeros.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>

#include "critline/errors.hpp"
#include "critline/kernels.hpp"
#include "critline/lambert.hpp"
#include "critline/zeta.hpp"

namespace critline {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
// refine_zero works in double for bracketing; branch tracking is reliable far below this
constexpr double kRefineMaxHeight = 1e7;

Real offset(long bits) { return Real(11L, bits) / 8L; }

// (y/2pi) log(y/2pi e)
Real smooth_term(const Real& y) {
    long b = y.prec();
    Real twopi = const_pi(b) * 2L;
    return y / twopi * (log(y / twopi) - 1L);
}

void require_index(const Real& n) {
    if (!n.is_integer() || n < 1.0) throw PreconditionError("zero index must be a positive integer");
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::Lambert: return "lambert";
        case Method::Transcendental: return "trans";
        case Method::Refined: return "refined";
        case Method::Reference: return "reference";
    }
    return "?";
}

Method parse_method(const std::string& s) {
    if (s == "lambert") return Method::Lambert;
    if (s == "trans" || s == "transcendental") return Method::Transcendental;
    if (s == "refined") return Method::Refined;
    if (s == "reference") return Method::Reference;
    throw PreconditionError("unknown method '" + s + "'");
}

CriticalZero estimate_zero_lambert(const Real& n_in, const PrecisionContext& ctx) {
    require_index(n_in);
    long b = ctx.bits() + 16;
    Real n = n_in.at(std::max(b, n_in.prec()));
    Real m = (n - offset(n.prec())).at(b);
    PrecisionContext wctx = ctx.plus_digits(5);
    Real w = lambert_w0(m / const_e(b), wctx);
    Real y = const_pi(b) * 2L * m / w.at(b);
    Real residual = m - smooth_term(y);
    return {n_in, y.at(ctx.bits()), Method::Lambert, residual.at(ctx.bits())};
}

CriticalZero estimate_zero_lambert(long n, const PrecisionContext& ctx) {
    return estimate_zero_lambert(Real(n, 64), ctx);
}

CriticalZero solve_transcendental(const Real& n_in, const PrecisionContext& ctx) {
    require_index(n_in);
    // |F| < eps is absolute, so carry the magnitude of n as extra bits
    long b = ctx.bits() + std::max(0L, n_in.exponent()) + 8;
    Real n = n_in.at(std::max(b, n_in.prec()));
    Real target = (n - offset(n.prec())).at(b);
    Real y = estimate_zero_lambert(n_in, ctx).y.at(b);
    Real twopi = const_pi(b) * 2L;
    Real eps = ctx.eps_real();
    for (int it = 0; it < 100; ++it) {
        Real F = smooth_term(y) - target;
        if (abs(F) < eps) return {n_in, y.at(ctx.bits()), Method::Transcendental, (-F).at(ctx.bits())};
        Real dF = log(y / twopi) / twopi;
        y -= F / dF;
    }
    throw ConvergenceError("solve_transcendental: no convergence in 100 Newton steps for n = " + n_in.sci(20));
}

CriticalZero solve_transcendental(long n, const PrecisionContext& ctx) {
    return solve_transcendental(Real(n, 64), ctx);
}

double refined_tolerance(double y) { return 0.02 / y; }

namespace {

// N(y) = k + 1 where arg zeta(1/2 + iy) = -theta + k pi; nudged off exact zero ordinates
long count_at(double y) {
    double gap = fast::mean_gap(y);
    for (int i = 0;; ++i) {
        try {
            return critical_branch(y) + 1;
        } catch (const ContinuationError&) {
            if (i == 3) throw;
            y += 1e-7 * gap;
        }
    }
}

// G(y) in double with the one-sided branch
double G_double(double y, long n, long* count) {
    long N = count_at(y);
    if (count) *count = N;
    double smooth = y / (2 * kPi) * (std::log(y / (2 * kPi)) - 1);
    return smooth + (N - 1) - fast::theta(y) / kPi - n + kZeroOffset;
}

// Re(e^{i theta} zeta(1/2 + iy)) reusing prime terms across the polish
Real hardy_Z_line(const Real& y, long b, long zeta_bits_, kernels::PrimeState& st) {
    Real th = theta_bits(y, b);
    Complex z = zeta_line_bits(Complex(Real(0.5, b), y), zeta_bits_, st);
    return cos(th) * z.re - sin(th) * z.im;
}

}  // namespace

CriticalZero refine_zero(long n, const PrecisionContext& ctx) {
    if (n < 1) throw PreconditionError("zero index must be a positive integer");
    double yl = estimate_zero_lambert(n, PrecisionContext(15)).y.to_double();
    if (yl > kRefineMaxHeight) throw RegimeError("refine_zero: ordinate " + fmt(yl) + " above the supported height");

    double delta = kPi / std::log(n + 2.0);
    double lo = 0, hi = 0;
    long Nlo = 0, Nhi = 0;
    bool bracketed = false;
    for (double widen : {1.0, 3.0}) {
        lo = std::max(1.0, yl - widen * delta);
        hi = yl + widen * delta;
        double glo = G_double(lo, n, &Nlo), ghi = G_double(hi, n, &Nhi);
        if (glo < 0 && ghi > 0) {
            bracketed = true;
            break;
        }
    }
    if (!bracketed)
        throw ConvergenceError("refine_zero: G has no sign change on [" + fmt(lo) + ", " + fmt(hi) + "] for n = " +
                               std::to_string(n));

    // G jumps by one at every zero; bisect until the n-th is the only jump inside
    while (Nlo != n - 1 || Nhi != n) {
        double mid = 0.5 * (lo + hi);
        if (hi - lo < 1e-12 * hi) throw ConvergenceError("refine_zero: bracket collapsed for n = " + std::to_string(n));
        long Nm;
        if (G_double(mid, n, &Nm) < 0) {
            lo = mid;
            Nlo = Nm;
        } else {
            hi = mid;
            Nhi = Nm;
        }
    }

    // G is flat between jumps, so the root itself comes from Z, which changes sign there
    double zlo = fast::hardy_Z(lo), zhi = fast::hardy_Z(hi);
    if (zlo == 0) hi = lo;
    if (zhi == 0) lo = hi;
    if (zlo * zhi > 0)
        throw ConvergenceError("refine_zero: Z does not change sign between N = n-1 and N = n for n = " +
                               std::to_string(n));
    double y0 = lo;
    int side = 0;
    for (int it = 0; it < 200 && hi - lo > 4e-16 * hi; ++it) {
        double c = (lo * zhi - hi * zlo) / (zhi - zlo);
        if (!(c > lo && c < hi)) c = 0.5 * (lo + hi);
        double zc = fast::hardy_Z(c);
        y0 = c;
        if (zc == 0) break;
        if ((zc < 0) == (zlo < 0)) {
            lo = c;
            zlo = zc;
            if (side == -1) zhi /= 2;
            side = -1;
        } else {
            hi = c;
            zhi = zc;
            if (side == 1) zlo /= 2;
            side = 1;
        }
    }
    const double bl = lo, bh = hi;  // final double bracket, kept for the sanity check below

    const double h = 1e-5;
    double slope_d = (fast::hardy_Z(y0 + h) - fast::hardy_Z(y0 - h)) / (2 * h);

    long b = ordinate_bits(y0, ctx);
    long zb = ctx.bits() + 4;
    kernels::PrimeState st;
    Real eps = ctx.eps_real();
    // secant error model e_{k+1} = C e_k e_{k-1} with C ~ |Z''/2Z'| ~ log y
    double C = 2.0 * std::max(1.0, std::log(y0));
    Real y_prev(y0, b);
    Real z_prev = hardy_Z_line(y_prev, b, zb, st);
    Real y_cur = y_prev;
    if (!z_prev.is_zero()) {
        y_cur = y_prev - z_prev / slope_d;
        double step_prev = std::fabs((y_cur - y_prev).to_double());
        double stop = ctx.eps() * y0 / 10;
        for (int it = 0; it < 40 && step_prev > stop / 10; ++it) {
            Real z_cur = hardy_Z_line(y_cur, b, zb, st);
            if (z_cur.is_zero() || z_cur == z_prev) break;
            Real y_next = y_cur - z_cur * (y_cur - y_prev) / (z_cur - z_prev);
            double step = std::fabs((y_next - y_cur).to_double());
            y_prev = y_cur;
            z_prev = z_cur;
            y_cur = y_next;
            if (C * step * step_prev < stop) break;
            step_prev = step;
            if (it == 39) throw ConvergenceError("refine_zero: secant polish did not settle for n = " + std::to_string(n));
        }
    }
    double yd = y_cur.to_double();
    double slack = 1e-9 * yd;
    if (yd < bl - slack || yd > bh + slack)
        throw ConvergenceError("refine_zero: polished root left the bracket for n = " + std::to_string(n));

    // G at the root with the two-sided arg: S = (n - 3/2) - theta/pi
    Real pi = const_pi(b);
    Real arg_avg = Real(n, b) * pi - pi * 3L / 2L - theta_bits(y_cur, b);
    Real residual = smooth_term(y_cur) + arg_avg / pi - Real(n, b) + offset(b);
    if (std::fabs(residual.to_double()) > refined_tolerance(yd))
        throw ConvergenceError("refine_zero: residual " + fmt(residual.to_double()) + " above tolerance for n = " +
                               std::to_string(n));
    return {Real(n, 64), y_cur.at(ctx.bits()), Method::Refined, residual.at(ctx.bits())};
}

long count_sign_changes(double T) {
    auto pass = [T](double h) {
        long c = 0;
        double prev = fast::hardy_Z(h);
        for (long i = 2;; ++i) {
            double t = std::min(T, i * h);
            double z = fast::hardy_Z(t);
            if ((z < 0) != (prev < 0) && z != 0) ++c;
            if (z != 0) prev = z;
            if (t >= T) break;
        }
        return c;
    };
    double h = fast::mean_gap(T) / 4;
    long c = pass(h);
    for (int i = 0; i < 12; ++i) {
        h /= 2;
        long c2 = pass(h);
        if (c2 == c) return c;
        c = c2;
    }
    throw ConvergenceError("count_sign_changes: counts still changing at step " + fmt(h));
}

CountResult count_zeros(const Real& T, bool with_oracle, const PrecisionContext& ctx) {
    if (!(T > 10.0)) throw PreconditionError("count_zeros needs T > 10");
    double Td = T.to_double();
    if (Td > kRefineMaxHeight) throw RegimeError("count_zeros: T above the supported height");
    const double near = 1e-6;
    double za = fast::hardy_Z(Td - near), zb = fast::hardy_Z(Td + near);
    if (za * zb <= 0) {
        double lo = Td - near, hi = Td + near;
        for (int i = 0; i < 80; ++i) {
            double mid = 0.5 * (lo + hi);
            double zm = fast::hardy_Z(mid);
            if ((zm < 0) == (za < 0)) lo = mid;
            else hi = mid;
        }
        std::ostringstream os;
        os.precision(15);
        os << "count_zeros: T = " << Td << " is within 1e-6 of the zero at " << 0.5 * (lo + hi);
        throw PreconditionError(os.str());
    }
    long b = ordinate_bits(Td, ctx);
    Real Tb = T.at(b);
    Real pi = const_pi(b);
    long k = critical_branch(Td);
    Real theta = riemann_siegel_theta(Tb, ctx).at(b);
    CountResult r{Tb.at(ctx.bits()), Real(ctx.bits()), Real(ctx.bits()), Real(ctx.bits()), std::nullopt};
    r.smooth = (smooth_term(Tb) + Real(7L, b) / 8L).at(ctx.bits());
    r.fluctuation = (Real(k, b) - theta / pi).at(ctx.bits());
    r.total = r.smooth + r.fluctuation;
    if (with_oracle) r.oracle_count = count_sign_changes(Td);
    return r;
}

Real gram_point(long n, const PrecisionContext& ctx) {
    if (n < 0) throw PreconditionError("gram_point needs n >= 0");
    // theta(t) ~ (t/2) log(t/2pi e) - pi/8 inverts like the zero estimate with n + 1/8
    long b0 = ctx.bits() + 16;
    Real m = Real(n, b0) + Real(1L, b0) / 8L;
    Real t = const_pi(b0) * 2L * m / lambert_w0(m / const_e(b0), ctx);
    long b = ordinate_bits(t.to_double(), ctx);
    t.set_prec(b);
    Real target = Real(n, b) * const_pi(b);
    Real eps = ctx.eps_real();
    for (int it = 0; it < 100; ++it) {
        Real f = riemann_siegel_theta(t, ctx).at(b) - target;
        if (abs(f) < eps) return t.at(ctx.bits());
        t -= f / riemann_siegel_theta_prime(t, ctx).at(b);
    }
    throw ConvergenceError("gram_point: Newton did not converge for n = " + std::to_string(n));
}

ReferenceZeroTable parse_reference_zeros(const std::string& text, const std::string& source) {
    ReferenceZeroTable table;
    table.source = source;
    std::istringstream in(text);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string w; ls >> w;) tok.push_back(w);
        if (tok.empty()) continue;
        if (tok.size() > 2)
            throw ParseError(source + ":" + std::to_string(lineno) + ": expected '[index] ordinate'", lineno);
        if (tok.size() == 2) {
            long idx;
            auto [p, ec] = std::from_chars(tok[0].data(), tok[0].data() + tok[0].size(), idx);
            if (ec != std::errc() || p != tok[0].data() + tok[0].size())
                throw ParseError(source + ":" + std::to_string(lineno) + ": bad index '" + tok[0] + "'", lineno);
        }
        const std::string& num = tok.back();
        bool ok = !num.empty() && num.find_first_not_of("0123456789.eE+-") == std::string::npos;
        Real y(128);
        if (ok) {
            try {
                y = Real(num, 128);
            } catch (const DomainError&) {
                ok = false;
            }
        }
        if (!ok || !y.is_finite())
            throw ParseError(source + ":" + std::to_string(lineno) + ": bad ordinate '" + num + "'", lineno);
        if (!table.ordinates.empty() && !(y > table.ordinates.back()))
            throw ValidationError(source + ":" + std::to_string(lineno) + ": ordinates not strictly increasing");
        table.ordinates.push_back(std::move(y));
    }
    if (table.ordinates.empty()) throw ValidationError(source + ": no ordinates");
    if (std::fabs(table.ordinates.front().to_double() - 14.134725) > 1e-4)
        throw ValidationError(source + ": first ordinate is not the first zero 14.134725");
    return table;
}

ReferenceZeroTable load_reference_zeros(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open reference table '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    std::string name = path.substr(path.find_last_of('/') + 1);
    return parse_reference_zeros(ss.str(), name);
}

VerifyReport verify_against_reference(const ReferenceZeroTable& table, long n_max, Method method,
                                      const PrecisionContext& ctx) {
    if (n_max < 1 || n_max > table.count()) throw PreconditionError("verify: n_max must be in [1, table size]");
    std::vector<Real> ys(n_max, Real(ctx.bits()));
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 8)
    for (long n = 1; n <= n_max; ++n) {
        try {
            Real y(ctx.bits());
            switch (method) {
                case Method::Lambert: y = estimate_zero_lambert(n, ctx).y; break;
                case Method::Transcendental: y = solve_transcendental(n, ctx).y; break;
                case Method::Refined: y = refine_zero(n, ctx).y; break;
                case Method::Reference: y = table.ordinates[n - 1].at(ctx.bits()); break;
            }
            ys[n - 1] = std::move(y);
        } catch (...) {
#pragma omp critical(verify_error)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);

    std::vector<double> ref(table.ordinates.size());
    for (std::size_t i = 0; i < ref.size(); ++i) ref[i] = table.ordinates[i].to_double();
    std::vector<int> hits(ref.size(), 0);
    VerifyReport rep;
    rep.rows.reserve(n_max);
    for (long n = 1; n <= n_max; ++n) {
        const Real& y = ys[n - 1];
        const Real& yr = table.ordinates[n - 1];
        long b = std::max(y.prec(), yr.prec());
        Real ae = abs(y.at(b) - yr.at(b));
        Real re = ae / yr.at(b);
        rep.max_rel_err = std::max(rep.max_rel_err, re.to_double());
        double yd = y.to_double();
        auto it = std::lower_bound(ref.begin(), ref.end(), yd);
        long j = it - ref.begin();
        if (j == static_cast<long>(ref.size()) || (j > 0 && yd - ref[j - 1] <= ref[j] - yd)) --j;
        ++hits[j];
        if (j != n - 1) ++rep.mismatches;
        rep.rows.push_back({n, y, yr, ae, re});
    }
    for (long j = 0; j < n_max; ++j)
        if (hits[j] != 1) ++rep.mismatches;
    return rep;
}

}  // namespace critline
