#pragma once

#include <optional>
#include <string>
#include <vector>

#include "critline/precision.hpp"

namespace critline {

// offset in (y/2pi) log(y/2pi e) + S(y) = n - 11/8
inline constexpr double kZeroOffset = 11.0 / 8.0;

enum class Method { Lambert, Transcendental, Refined, Reference };
const char* method_name(Method m);
// accepts "lambert", "trans"/"transcendental", "refined", "reference"
Method parse_method(const std::string& s);

struct CriticalZero {
    Real n;  // exact integer
    Real y;
    Method method = Method::Lambert;
    Real residual;
};

CriticalZero estimate_zero_lambert(const Real& n, const PrecisionContext& ctx);
CriticalZero estimate_zero_lambert(long n, const PrecisionContext& ctx);
CriticalZero solve_transcendental(const Real& n, const PrecisionContext& ctx);
CriticalZero solve_transcendental(long n, const PrecisionContext& ctx);
CriticalZero refine_zero(long n, const PrecisionContext& ctx);
// |residual| bound accepted for refine_zero results at ordinate y
double refined_tolerance(double y);

struct CountResult {
    Real T;
    Real smooth;       // (T/2pi) log(T/2pi e) + 7/8
    Real fluctuation;  // arg zeta(1/2 + iT) / pi
    Real total;
    std::optional<long> oracle_count;
};

CountResult count_zeros(const Real& T, bool with_oracle, const PrecisionContext& ctx);
// sign changes of Z on (0, T], step halved until two passes agree
long count_sign_changes(double T);

Real gram_point(long n, const PrecisionContext& ctx);

struct ReferenceZeroTable {
    std::vector<Real> ordinates;
    std::string source;
    long count() const { return static_cast<long>(ordinates.size()); }
};

ReferenceZeroTable load_reference_zeros(const std::string& path);
// same format from an in-memory string; `source` names it in errors
ReferenceZeroTable parse_reference_zeros(const std::string& text, const std::string& source);

struct VerifyRow {
    long n;
    Real y_method, y_ref, abs_err, rel_err;
};

struct VerifyReport {
    std::vector<VerifyRow> rows;
    double max_rel_err = 0;
    // n whose nearest reference ordinate is not the n-th, plus reference
    // ordinates hit by no estimate or by several
    long mismatches = 0;
};

VerifyReport verify_against_reference(const ReferenceZeroTable& table, long n_max, Method method,
                                      const PrecisionContext& ctx);

}  // namespace critline
