#include "critline/field.hpp"

#include <charconv>
#include <cmath>
#include <exception>

#include <json.hpp>

#include "critline/errors.hpp"
#include "critline/quadrature.hpp"
#include "critline/zeros.hpp"
#include "critline/zeta.hpp"

namespace critline {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kLn2 = 0.6931471805599453;

// terms n <= n_max leave a remainder below e^{-(n_max+1)^2 pi t} < 2^-bits
long series_terms(double t, long bits) {
    double need = bits * kLn2;
    return static_cast<long>(std::ceil(std::sqrt(std::max(1.0, need / (kPi * t)))));
}

// sum n^p e^{-n^2 pi t} for p = 0 or 2, at precision b
Real theta_sum(const Real& t, long b, int p, long terms) {
    Real pt = const_pi(b) * t.at(b);
    Real q = exp(-pt);
    Real q2 = q * q;
    Real term = q;       // q^{n^2}
    Real step = q * q2;  // q^{2n+1}
    Real acc(b);
    for (long n = 1; n <= terms; ++n) {
        if (p == 2) acc += term * (n * n);
        else acc += term;
        term *= step;
        step *= q2;
        if (term.is_zero()) break;
    }
    return acc;
}

Real g_prime_bits(const Real& t, long b) {
    long terms = series_terms(t.to_double(), b) + 1;
    return -(const_pi(b) * theta_sum(t, b, 2, terms));
}

void check_strip(const Complex& z) {
    if (z.re < 0.0 || z.re > 1.0) throw PreconditionError("phi_potential needs 0 <= Re z <= 1");
    if (abs(z.im) > 1000.0) throw PreconditionError("phi_potential needs |Im z| <= 1000");
}

// sinh(x) and x cosh(x) - sinh(x) for small |x| by their series
void small_sinh_pair(const Complex& x, long b, Complex& sh, Complex& d) {
    Complex x2 = x * x;
    Complex term = x;  // x^{2k+1} / (2k+1)!
    sh = x;
    d = Complex(b);
    for (long k = 1; k < 10000; ++k) {
        term *= x2;
        term /= (2 * k) * (2 * k + 1);
        sh += term;
        Complex dk = term * (2 * k);
        d += dk;
        if (std::max(term.re.exponent(), term.im.exponent()) < -b - 4) break;
    }
}

}  // namespace

Real theta_series_g(const Real& t, const PrecisionContext& ctx) {
    if (t.sign() <= 0) throw DomainError("theta_series_g needs t > 0");
    long b = ctx.bits() + 8;
    double need = std::log(1.0 / ctx.eps());
    long terms = static_cast<long>(std::ceil(std::sqrt(std::max(1.0, need / (kPi * t.to_double())))));
    return theta_sum(t, b, 0, terms).at(ctx.bits());
}

Real theta_series_g_prime(const Real& t, const PrecisionContext& ctx) {
    if (t.sign() <= 0) throw DomainError("theta_series_g_prime needs t > 0");
    return g_prime_bits(t, ctx.bits() + 8).at(ctx.bits());
}

Complex phi_potential(const Complex& z, const PrecisionContext& ctx) {
    check_strip(z);
    // integrated by parts in s = log t:
    // phi = 8 w g'(1) + 8 int_0^inf H(e^s) e^{-s/4} [-sinh(ws)/(4s) + (ws cosh ws - sinh ws)/s^2] ds
    // with w = (z - 1/2)/2 and H(t) = t^{3/2} g'(t)
    const long target = ctx.bits();
    double wabs = std::hypot(z.re.to_double() - 0.5, z.im.to_double()) / 2;
    const long wb = target + 20 + static_cast<long>(std::ceil(std::log2(1.0 + wabs)));
    Complex w = (z.at(wb) - Real(0.5, wb)) / 2L;
    double rew = std::fabs(w.re.to_double());

    // end of the range: 8 pi e^{1.25 s} e^{-pi e^s} (1+|w|)^2 e^{|Re w| s} below 2^-target
    double smax = 0.5;
    const double floor_log = -(target * kLn2) - 8;
    while (std::log(8 * kPi) + (1.25 + rew) * smax - kPi * std::exp(smax) + 2 * std::log1p(wabs) > floor_log) smax += 0.01;

    // panels short enough that both the phase |w| h and the decay pi e^s h stay under one radian
    std::vector<double> edges{0.0};
    while (edges.back() < smax) {
        double s = edges.back();
        double h = 1.0 / (wabs + kPi * std::exp(s) + 1.0);
        h = 1.0 / (wabs + kPi * std::exp(s + h) + 1.0);
        edges.push_back(std::min(smax, s + h));
    }
    const long panels = static_cast<long>(edges.size()) - 1;
    const int m = gauss_order_for(0.6, wb);
    auto rule = gauss_legendre(m, wb);

    std::vector<Complex> part(panels, Complex(wb));
    std::vector<double> l1(panels, 0.0);
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 4)
    for (long p = 0; p < panels; ++p) {
        try {
            Real a(edges[p], wb), bnd(edges[p + 1], wb);
            Real half = (bnd - a) / 2L, mid = (bnd + a) / 2L;
            Complex acc(wb);
            double mag = 0;
            Complex sh(wb), d(wb), ws(wb);
            for (int i = 0; i < m; ++i) {
                Real s = mid + half * rule->nodes[i];
                Real t = exp(s);
                // 8 H(e^s) e^{-s/4} = 8 e^{5s/4} g'(e^s)
                Real A = g_prime_bits(t, wb) * exp(s * 1.25) * 8L;
                ws = w * s;
                double wsd = std::hypot(ws.re.to_double(), ws.im.to_double());
                if (wsd < 0.125) {
                    small_sinh_pair(ws, wb, sh, d);
                } else {
                    Real ep = exp(ws.re), em = exp(-ws.re);
                    Real sn(wb), cs(wb);
                    mpfr_sin_cos(sn.get(), cs.get(), ws.im.get(), MPFR_RNDN);
                    // sinh = ((ep - em) cos, (ep + em) sin)/2, cosh = ((ep + em) cos, (ep - em) sin)/2
                    Real dp = (ep - em) / 2L, sp = (ep + em) / 2L;
                    sh = Complex(dp * cs, sp * sn);
                    Complex ch(sp * cs, dp * sn);
                    d = ws * ch - sh;
                }
                Complex br = d / (s * s) - sh / (s * 4L);
                Complex f = br * A * rule->weights[i];
                mag += std::hypot(f.re.to_double(), f.im.to_double());
                acc += f;
            }
            acc *= half;
            part[p] = std::move(acc);
            l1[p] = mag * half.to_double();
        } catch (...) {
#pragma omp critical(phi_error)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);

    Complex total = w * g_prime_bits(Real(1L, wb), wb) * 8L;
    double mass = 0;
    for (long p = 0; p < panels; ++p) {
        total += part[p];
        mass += l1[p];
    }
    // rounding in the sum is bounded by the absolute mass of the integrand
    double bound = mass * std::ldexp(1.0, static_cast<int>(-wb + 12));
    if (bound > ctx.eps()) throw AccuracyError("phi_potential: cancellation exceeds the target accuracy", bound);
    return total.at(target);
}

Real potential_Phi(const Real& x, const Real& y, const PrecisionContext& ctx) {
    return phi_potential(Complex(x, y), ctx).re;
}

FieldSample field_at(const Real& x, const Real& y, const PrecisionContext& ctx) {
    XiDecomposition uv = xi_uv(x, y, ctx);
    long b = ctx.bits();
    FieldSample s{x.at(b), y.at(b), uv.u, uv.v, uv.u, -uv.v, uv.u, uv.v, potential_Phi(x, y, ctx)};
    return s;
}

const char* parity_name(Parity p) { return p == Parity::Plus ? "plus" : "minus"; }

VorticityRecord vorticity(long n, const PrecisionContext& ctx) {
    if (n < 1) throw PreconditionError("vorticity needs n >= 1");
    long b = ctx.bits();
    Real yn = refine_zero(n, ctx).y;
    double y = yn.to_double();
    double gap = refine_zero(n + 1, ctx).y.to_double() - y;
    if (n > 1) gap = std::min(gap, y - refine_zero(n - 1, ctx).y.to_double());
    double r = std::min(0.2, gap / 4);

    const int K = 64;
    Real rr(r, b), half(0.5, b);
    Real pi2 = const_pi(b) * 2L;
    std::vector<double> ang(K);
    Real circ(b);
    for (int j = 0; j < K; ++j) {
        Real phi = pi2 * long(j) / long(K);
        Real c = cos(phi), s = sin(phi);
        XiDecomposition uv = xi_uv(half + rr * c, yn + rr * s, ctx);
        // B . dl with dl = r(-sin, cos) dphi
        circ += (uv.v * c - uv.u * s) * rr;
        ang[j] = atan2(uv.v, uv.u).to_double();
    }
    circ *= pi2 / long(K);
    double turn = 0;
    for (int j = 0; j < K; ++j) {
        double d = ang[(j + 1) % K] - ang[j];
        d -= 2 * kPi * std::round(d / (2 * kPi));
        turn += d;
    }
    int degree = static_cast<int>(std::lround(turn / (2 * kPi)));
    if (degree != 1)
        throw DegenerateZeroError("vorticity: B turns " + std::to_string(degree) + " times around zero " +
                                  std::to_string(n));
    VorticityRecord rec;
    rec.n = n;
    rec.center_y = yn;
    rec.winding = circ.sign() > 0 ? 1 : -1;
    rec.parity = rec.winding < 0 ? Parity::Plus : Parity::Minus;
    rec.degree = degree;
    rec.circulation = circ;
    rec.radius = rr;
    return rec;
}

AlternationReport regular_alternating_check(const std::vector<std::pair<double, double>>& samples, double min_gap) {
    if (samples.size() < 3) throw PreconditionError("regular_alternating_check needs at least 3 samples");
    for (std::size_t i = 1; i < samples.size(); ++i) {
        double dy = samples[i].first - samples[i - 1].first;
        if (!(dy > 0)) throw PreconditionError("samples must be strictly increasing in y");
        if (dy > min_gap / 10 * (1 + 1e-9)) throw PreconditionError("sample spacing exceeds min_gap / 10");
    }
    AlternationReport rep;
    std::vector<std::size_t> crossing_idx;
    long last = -1;  // last sample with a nonzero value
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double f = samples[i].second;
        if (f == 0) continue;
        if (last >= 0 && (f < 0) != (samples[last].second < 0)) {
            const auto& [ya, fa] = samples[last];
            double c = ya + (samples[i].first - ya) * fa / (fa - f);
            if (!crossing_idx.empty() && i - crossing_idx.back() < 10)
                throw ResolutionError("two sign changes within 10 samples near y = " + std::to_string(c));
            rep.zero_crossings.push_back(c);
            crossing_idx.push_back(i);
        }
        last = static_cast<long>(i);
    }
    if (rep.zero_crossings.size() >= 2) rep.extrema_per_interval.assign(rep.zero_crossings.size() - 1, 0);
    std::size_t j = 0;
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
        double y = samples[i].first;
        double a = samples[i].second - samples[i - 1].second, c = samples[i + 1].second - samples[i].second;
        // compare signs, the product underflows for |xi| ~ e^{-pi y / 4}
        if (!((a < 0 && c > 0) || (a > 0 && c < 0))) continue;
        while (j < rep.zero_crossings.size() && rep.zero_crossings[j] < y) ++j;
        // interval (crossing[j-1], crossing[j])
        if (j == 0) ++rep.leading_extrema;
        else if (j == rep.zero_crossings.size()) ++rep.trailing_extrema;
        else ++rep.extrema_per_interval[j - 1];
    }
    rep.pass = rep.leading_extrema <= 1 && rep.trailing_extrema <= 1;
    for (int k : rep.extrema_per_interval)
        if (k != 1) rep.pass = false;
    return rep;
}

void validate(const GridSpec& g) {
    if (g.nx < 2 || g.ny < 2) throw PreconditionError("grid needs nx, ny >= 2");
    if (!(0 <= g.x0 && g.x0 < g.x1 && g.x1 <= 1)) throw PreconditionError("grid needs 0 <= x0 < x1 <= 1");
    if (!(g.y0 < g.y1)) throw PreconditionError("grid needs y0 < y1");
}

std::vector<FieldSample> grid_samples(const GridSpec& g, const PrecisionContext& ctx) {
    validate(g);
    const long total = static_cast<long>(g.nx) * g.ny;
    long b = ctx.bits();
    std::vector<FieldSample> out(total);
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 1)
    for (long k = 0; k < total; ++k) {
        try {
            long i = k % g.nx, j = k / g.nx;
            // exact endpoints; interior points from the endpoint formula, not accumulation
            Real x = Real(g.x0, b) + (Real(g.x1, b) - Real(g.x0, b)) * i / long(g.nx - 1);
            Real y = Real(g.y0, b) + (Real(g.y1, b) - Real(g.y0, b)) * j / long(g.ny - 1);
            out[k] = field_at(x, y, ctx);
        } catch (...) {
#pragma omp critical(grid_error)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return out;
}

std::string field_number(const Real& v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v.to_double());
    return std::string(buf, p);
}

GridSummary sample_grid(const GridSpec& g, const PrecisionContext& ctx, std::ostream& out) {
    auto rows = grid_samples(g, ctx);
    GridSummary sum;
    sum.rows = static_cast<long>(rows.size());
    sum.low_ordinate = g.y0 < 10;
    if (g.format == GridFormat::Csv) {
        out << "x,y,u,v,Ex,Ey,Bx,By,Phi\n";
        for (const auto& s : rows) {
            out << field_number(s.x) << ',' << field_number(s.y) << ',' << field_number(s.u) << ','
                << field_number(s.v) << ',' << field_number(s.Ex) << ',' << field_number(s.Ey) << ','
                << field_number(s.Bx) << ',' << field_number(s.By) << ',' << field_number(s.Phi) << '\n';
        }
    } else {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& s : rows) {
            arr.push_back({{"x", s.x.to_double()},   {"y", s.y.to_double()},   {"u", s.u.to_double()},
                           {"v", s.v.to_double()},   {"Ex", s.Ex.to_double()}, {"Ey", s.Ey.to_double()},
                           {"Bx", s.Bx.to_double()}, {"By", s.By.to_double()}, {"Phi", s.Phi.to_double()}});
        }
        out << arr.dump(1) << '\n';
    }
    if (!out) throw std::runtime_error("grid output failed");
    return sum;
}

}  // namespace critline
