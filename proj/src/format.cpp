#include "critline/format.hpp"

#include <cstdlib>

namespace critline {

std::string format_value(const Real& v, int sig) {
    if (sig < 1) sig = 1;
    if (!v.is_finite()) return v.sci(sig);
    if (v.is_zero()) return Real(v.prec()).fixed(sig - 1);
    std::string s = v.sci(sig);
    // decimal exponent after rounding to sig digits, so 999999.96 goes scientific
    long e10 = std::strtol(s.c_str() + s.find('e') + 1, nullptr, 10);
    if (e10 >= 6) return s;
    return v.fixed(static_cast<int>(std::max(0L, sig - 1 - e10)));
}

}  // namespace critline
