#pragma once

#include "critline/precision.hpp"

namespace critline {

// Principal branch W0, w e^w = x for x >= -1/e.
Real lambert_w0(const Real& x, const PrecisionContext& ctx);

}  // namespace critline
