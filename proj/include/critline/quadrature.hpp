#pragma once

#include <memory>
#include <vector>

#include "critline/precision.hpp"

namespace critline {

// m-point Gauss-Legendre rule on [-1, 1]; nodes ascending. Cached per (m, bits).
struct GaussRule {
    std::vector<Real> nodes, weights;
};
std::shared_ptr<const GaussRule> gauss_legendre(int m, long bits);

// smallest m whose rule integrates e^{ikx}, |k| <= half_phase, on [-1, 1] to 2^-bits
int gauss_order_for(double half_phase, long bits);

}  // namespace critline
