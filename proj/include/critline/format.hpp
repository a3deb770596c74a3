#pragma once

#include <string>

#include "critline/precision.hpp"

namespace critline {

// `sig` significant digits; fixed-point below 1e6 in magnitude, scientific from there on
std::string format_value(const Real& v, int sig);

}  // namespace critline
