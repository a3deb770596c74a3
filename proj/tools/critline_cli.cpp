// critline: command-line front end to the zeta, zero and field routines.
//
// exit status: 0 success, 2 usage, 3 numerical failure, 4 verification failure

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "critline/errors.hpp"
#include "critline/field.hpp"
#include "critline/format.hpp"
#include "critline/zeros.hpp"
#include "critline/zeta.hpp"

using namespace critline;

namespace {

enum Exit { kOk = 0, kUsage = 2, kNumeric = 3, kVerify = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Global {
    int digits = 30;
    std::string output = "plain";
};

Real parse_index(const std::string& s, long bits) {
    Real n(bits);
    try {
        n = Real(s, bits);
    } catch (const DomainError&) {
        throw UsageError("index '" + s + "' is not a number");
    }
    if (!n.is_integer() || n < 1.0) throw UsageError("index must be a positive integer, got '" + s + "'");
    return n;
}

std::string sci3(const Real& r) { return r.sci(3); }

int cmd_zero(const Global& g, const std::string& n_text, const std::string& method_text) {
    PrecisionContext ctx(g.digits);
    Method m;
    try {
        m = parse_method(method_text);
    } catch (const PreconditionError& e) {
        throw UsageError(e.what());
    }
    if (m == Method::Reference) throw UsageError("method must be lambert, trans or refined");
    // enough bits to hold the integer exactly when it is written out in full
    long bits = std::max<long>(ctx.bits(), static_cast<long>(n_text.size() * 3.33) + 16);
    Real n = parse_index(n_text, bits);
    CriticalZero z(Real(64), Real(64), m, Real(64));
    switch (m) {
        case Method::Lambert: z = estimate_zero_lambert(n, ctx); break;
        case Method::Transcendental: z = solve_transcendental(n, ctx); break;
        default: {
            if (n > 1e15) throw UsageError("refined method needs n <= 1e15");
            z = refine_zero(n.to_long(), ctx);
        }
    }
    std::string ns = n < 1e18 ? n.fixed(0) : n.sci(g.digits);
    std::string ys = format_value(z.y, g.digits);
    if (g.output == "json") {
        nlohmann::ordered_json j{{"n", ns}, {"y", ys}, {"method", method_name(m)}, {"residual", sci3(z.residual)}};
        std::cout << j.dump() << '\n';
    } else if (g.output == "csv") {
        std::cout << "n,y,method,residual\n" << ns << ',' << ys << ',' << method_name(m) << ',' << sci3(z.residual) << '\n';
    } else {
        std::cout << ns << ' ' << ys << ' ' << method_name(m) << ' ' << sci3(z.residual) << '\n';
    }
    return kOk;
}

int cmd_count(const Global& g, const std::string& T_text, bool oracle) {
    PrecisionContext ctx(g.digits);
    Real T(ctx.bits());
    try {
        T = Real(T_text, ctx.bits());
    } catch (const DomainError&) {
        throw UsageError("T '" + T_text + "' is not a number");
    }
    if (!(T > 10.0)) throw UsageError("count needs T > 10");
    CountResult r = count_zeros(T, oracle, ctx);
    int sig = std::min(g.digits, 20);
    long rounded = std::lround(r.total.to_double());
    if (g.output == "json") {
        nlohmann::ordered_json j{{"T", format_value(r.T, sig)},
                                 {"smooth", format_value(r.smooth, sig)},
                                 {"fluctuation", format_value(r.fluctuation, sig)},
                                 {"total", format_value(r.total, sig)},
                                 {"count", rounded}};
        if (r.oracle_count) j["oracle"] = *r.oracle_count;
        std::cout << j.dump() << '\n';
    } else if (g.output == "csv") {
        std::cout << "T,smooth,fluctuation,total,count" << (r.oracle_count ? ",oracle" : "") << '\n';
        std::cout << format_value(r.T, sig) << ',' << format_value(r.smooth, sig) << ','
                  << format_value(r.fluctuation, sig) << ',' << format_value(r.total, sig) << ',' << rounded;
        if (r.oracle_count) std::cout << ',' << *r.oracle_count;
        std::cout << '\n';
    } else {
        std::cout << "T " << format_value(r.T, sig) << "\nsmooth " << format_value(r.smooth, sig) << "\nfluctuation "
                  << format_value(r.fluctuation, sig) << "\ntotal " << format_value(r.total, sig) << "\ncount "
                  << rounded << '\n';
        if (r.oracle_count) std::cout << "oracle " << *r.oracle_count << '\n';
    }
    if (r.oracle_count && *r.oracle_count != rounded) {
        std::cerr << "count: formula " << rounded << " disagrees with sign-change count " << *r.oracle_count << '\n';
        return kVerify;
    }
    return kOk;
}

int cmd_gram(const Global& g, long n) {
    if (n < 0) throw UsageError("gram needs n >= 0");
    PrecisionContext ctx(g.digits);
    Real v = gram_point(n, ctx);
    std::string s = format_value(v, g.digits);
    if (g.output == "json") std::cout << nlohmann::ordered_json{{"n", n}, {"g", s}}.dump() << '\n';
    else if (g.output == "csv") std::cout << "n,g\n" << n << ',' << s << '\n';
    else std::cout << n << ' ' << s << '\n';
    return kOk;
}

int cmd_grid(const Global& g, GridSpec spec) {
    PrecisionContext ctx(g.digits);
    spec.format = g.output == "json" ? GridFormat::Json : GridFormat::Csv;
    try {
        validate(spec);
    } catch (const PreconditionError& e) {
        throw UsageError(e.what());
    }
    if (spec.y0 < 10) std::cerr << "warning: grid reaches below y = 10\n";
    sample_grid(spec, ctx, std::cout);
    return kOk;
}

int cmd_verify(const Global& g, const std::string& path, long n_max, const std::string& method_text, double tol) {
    PrecisionContext ctx(g.digits);
    Method m;
    try {
        m = parse_method(method_text);
    } catch (const PreconditionError& e) {
        throw UsageError(e.what());
    }
    ReferenceZeroTable table = load_reference_zeros(path);
    if (n_max < 1 || n_max > table.count())
        throw UsageError("--max must be between 1 and " + std::to_string(table.count()));
    VerifyReport rep = verify_against_reference(table, n_max, m, ctx);
    int sig = std::min(g.digits, 25);
    if (g.output == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : rep.rows)
            arr.push_back({{"n", r.n},
                           {"y_method", format_value(r.y_method, sig)},
                           {"y_ref", format_value(r.y_ref, sig)},
                           {"abs_err", r.abs_err.sci(3)},
                           {"rel_err", r.rel_err.sci(3)}});
        std::cout << arr.dump(1) << '\n';
    } else {
        std::cout << "n,y_method,y_ref,abs_err,rel_err\n";
        for (const auto& r : rep.rows)
            std::cout << r.n << ',' << format_value(r.y_method, sig) << ',' << format_value(r.y_ref, sig) << ','
                      << r.abs_err.sci(3) << ',' << r.rel_err.sci(3) << '\n';
    }
    std::cerr << "max_rel_err " << rep.max_rel_err << " mismatches " << rep.mismatches << '\n';
    if (tol < 0) tol = m == Method::Refined ? 1e-8 : INFINITY;
    if (rep.mismatches != 0 || rep.max_rel_err > tol) return kVerify;
    return kOk;
}

struct Battery {
    bool ok = true;
    void report(bool pass, const std::string& name, const std::string& detail) {
        std::cout << (pass ? "PASS " : "FAIL ") << name << ' ' << detail << '\n';
        ok = ok && pass;
    }
};

std::string num(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

int cmd_check_rh(const Global& g, double ymax) {
    if (!(ymax > 20)) throw UsageError("check-rh needs --ymax > 20");
    PrecisionContext ctx(g.digits);
    long b = ctx.bits();
    Battery bat;
    // fixed sequence: identical output on every run
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> ux(0.0, 1.0), uy(10.0, std::min(ymax, 100.0));

    {
        double worst = 0;
        for (int i = 0; i < 10; ++i) {
            Complex s(ux(rng), uy(rng), b);
            Complex a = xi(s, ctx), c = xi(1L - s, ctx);
            worst = std::max(worst, (abs(a - c) / abs(a)).to_double());
        }
        bat.report(worst < 1e3 * ctx.eps(), "functional-equation", "max rel |xi(s) - xi(1-s)| = " + num(worst));
    }
    {
        double worst = 0;
        Real h(1e-4, b);
        for (int i = 0; i < 20; ++i) {
            Real x(0.05 + 0.9 * ux(rng), b), y(uy(rng), b);
            auto f = [&](const Real& xx, const Real& yy) { return xi_uv(xx, yy, ctx); };
            XiDecomposition xp = f(x + h, y), xm = f(x - h, y), yp = f(x, y + h), ym = f(x, y - h), c = f(x, y);
            Real ux_ = (xp.u - xm.u) / (h * 2L), vx = (xp.v - xm.v) / (h * 2L);
            Real uy_ = (yp.u - ym.u) / (h * 2L), vy = (yp.v - ym.v) / (h * 2L);
            Real scale = max(Real(1L, b), hypot(c.u, c.v));
            double r = (max(abs(ux_ - vy), abs(uy_ + vx)) / scale).to_double();
            worst = std::max(worst, r);
        }
        bat.report(worst < 1e-6, "cauchy-riemann", "max residual = " + num(worst));
    }
    {
        long n = 1;
        bool alt = true;
        Parity prev = Parity::Plus;
        std::string detail;
        for (;; ++n) {
            if (refine_zero(n, ctx).y > ymax) break;
            VorticityRecord v = vorticity(n, ctx);
            if (n == 1 && v.parity != Parity::Minus) alt = false;
            if (n > 1 && v.parity == prev) alt = false;
            if (!alt && detail.empty()) detail = " (first break at n = " + std::to_string(n) + ")";
            prev = v.parity;
        }
        bat.report(alt, "vorticity-alternation", std::to_string(n - 1) + " zeros below " + num(ymax) + detail);
    }
    {
        std::vector<std::pair<double, double>> samples;
        const double step = 0.005;
        long count = static_cast<long>(std::floor((ymax - 10) / step)) + 1;
        samples.resize(count);
        PrecisionContext lctx(std::min(g.digits, 20));
#pragma omp parallel for schedule(static)
        for (long i = 0; i < count; ++i) {
            double y = 10 + i * step;
            samples[i] = {y, xi_uv(Real(1L, lctx.bits()), Real(y, lctx.bits()), lctx).v.to_double()};
        }
        // the values shrink like e^{-pi y/4}; only signs and order matter here
        AlternationReport rep = regular_alternating_check(samples, 10 * step);
        bat.report(rep.pass, "regular-alternating", "Im xi(1+iy) on [10, " + num(ymax) + "], " +
                                                       std::to_string(rep.zero_crossings.size()) + " sign changes");
    }
    {
        double lo = ymax >= 50 ? 50 : 10, hi = std::min(ymax, 150.0);
        double worst = INFINITY;
        for (double a : {0.6, 0.7, 0.8, 0.9})
            for (double y = lo; y <= hi + 1e-9; y += 0.25)
                worst = std::min(worst, offline_residual(Real(a, b), Real(y, b), ctx).to_double());
        bat.report(worst > 0.01, "offline-residual",
                   "min over a in {0.6,0.7,0.8,0.9}, y in [" + num(lo) + ", " + num(hi) + "] = " + num(worst));
    }
    return bat.ok ? kOk : kVerify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"critline: zeta zeros, counting and field maps on the critical strip"};
    app.require_subcommand(1);
    Global g;
    if (const char* env = std::getenv("CRITLINE_DIGITS")) {
        try {
            std::size_t used = 0;
            g.digits = std::stoi(env, &used);
            if (env[used] != '\0') throw std::invalid_argument(env);
        } catch (const std::exception&) {
            std::cerr << "CRITLINE_DIGITS must be an integer\n";
            return kUsage;
        }
    }
    app.add_option("--digits", g.digits, "working precision in decimal digits (>= 15)");
    app.add_option("--output", g.output, "plain, csv or json")->check(CLI::IsMember({"plain", "csv", "json"}));
    app.fallthrough();

    std::string n_text, method = "refined";
    auto* zero = app.add_subcommand("zero", "n-th zero ordinate");
    zero->add_option("n", n_text, "zero index")->required();
    zero->add_option("--method", method, "lambert, trans or refined");

    std::string T_text;
    bool oracle = false;
    auto* count = app.add_subcommand("count", "zero count below T");
    count->add_option("T", T_text, "height")->required();
    count->add_flag("--oracle", oracle, "also count sign changes of Z");

    long gram_n = 0;
    auto* gram = app.add_subcommand("gram", "Gram point g_n");
    gram->add_option("n", gram_n, "index")->required();

    GridSpec spec;
    auto* grid = app.add_subcommand("grid", "sample u, v, E, B and Phi on a rectangle");
    grid->add_option("--x0", spec.x0);
    grid->add_option("--x1", spec.x1);
    grid->add_option("--y0", spec.y0);
    grid->add_option("--y1", spec.y1);
    grid->add_option("--nx", spec.nx);
    grid->add_option("--ny", spec.ny);

    std::string ref_path, vmethod = "refined";
    long vmax = 100;
    double tol = -1;
    auto* verify = app.add_subcommand("verify", "compare computed zeros with a reference table");
    verify->add_option("--reference", ref_path, "reference ordinates file")->required();
    verify->add_option("--max", vmax, "highest index to check");
    verify->add_option("--method", vmethod, "lambert, trans, refined or reference");
    verify->add_option("--tol", tol, "relative error bound (default 1e-8 for refined)");

    double ymax = 200;
    auto* rh = app.add_subcommand("check-rh", "run the invariant battery up to a height");
    rh->add_option("--ymax", ymax, "upper ordinate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (g.digits < 15) throw UsageError("--digits must be at least 15");
        if (*zero) return cmd_zero(g, n_text, method);
        if (*count) return cmd_count(g, T_text, oracle);
        if (*gram) return cmd_gram(g, gram_n);
        if (*grid) return cmd_grid(g, spec);
        if (*verify) return cmd_verify(g, ref_path, vmax, vmethod, tol);
        if (*rh) return cmd_check_rh(g, ymax);
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kUsage;
    } catch (const ValidationError& e) {
        std::cerr << "input: " << e.what() << '\n';
        return kUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << '\n';
        return kUsage;
    } catch (const NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumeric;
    }
    return kUsage;
}
