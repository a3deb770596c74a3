#pragma once

#include <ostream>
#include <utility>
#include <vector>

#include "critline/precision.hpp"

namespace critline {

// g(t) = sum_{n>=1} e^{-n^2 pi t}
Real theta_series_g(const Real& t, const PrecisionContext& ctx);
// g'(t)
Real theta_series_g_prime(const Real& t, const PrecisionContext& ctx);

// Analytic potential with xi = -d phi / dz and phi(1/2) = 0. Absolute accuracy
// ctx.eps; |xi| itself is about e^{-pi |y| / 4}, so derivative checks at height y
// need roughly pi y / (4 ln 10) extra digits.
Complex phi_potential(const Complex& z, const PrecisionContext& ctx);
Real potential_Phi(const Real& x, const Real& y, const PrecisionContext& ctx);

struct FieldSample {
    Real x, y, u, v, Ex, Ey, Bx, By, Phi;
};
FieldSample field_at(const Real& x, const Real& y, const PrecisionContext& ctx);

enum class Parity { Plus, Minus };
const char* parity_name(Parity p);

struct VorticityRecord {
    long n = 0;
    Real center_y;
    Parity parity = Parity::Minus;
    int winding = 0;     // sense of the B circulation: +1 counterclockwise, -1 clockwise
    int degree = 0;      // turns of the B direction around the circle (argument principle)
    Real circulation;    // loop integral of B . dl
    Real radius;
};
VorticityRecord vorticity(long n, const PrecisionContext& ctx);

struct AlternationReport {
    std::vector<double> zero_crossings;
    std::vector<int> extrema_per_interval;  // strict extrema between consecutive crossings
    // before the first and after the last crossing; cut by the range, so at most one
    int leading_extrema = 0, trailing_extrema = 0;
    bool pass = false;
};
AlternationReport regular_alternating_check(const std::vector<std::pair<double, double>>& samples, double min_gap);

enum class GridFormat { Csv, Json };

struct GridSpec {
    double x0 = 0, x1 = 1, y0 = 10, y1 = 20;
    int nx = 2, ny = 2;
    GridFormat format = GridFormat::Csv;
};

struct GridSummary {
    long rows = 0;
    bool low_ordinate = false;  // part of the grid lies below y = 10
};

void validate(const GridSpec& spec);
std::vector<FieldSample> grid_samples(const GridSpec& spec, const PrecisionContext& ctx);
GridSummary sample_grid(const GridSpec& spec, const PrecisionContext& ctx, std::ostream& out);
// one value for CSV and JSON output
std::string field_number(const Real& v);

}  // namespace critline
