#pragma once

#include <gmpxx.h>

#include <memory>
#include <vector>

#include "critline/precision.hpp"

namespace critline {

// Exact B_{2k}, k >= 1.
mpq_class bernoulli_2k(int k);

// B_{2k}/(2k)! for k = 1..count at the given binary precision. Index 0 holds k=1.
std::shared_ptr<const std::vector<Real>> bernoulli_over_factorial(int count, long prec);

// B_{2k}/(2k(2k-1)), the Stirling coefficients, k = 1..count.
std::shared_ptr<const std::vector<Real>> stirling_coefficients(int count, long prec);

// Double-precision B_{2k}/(2k)!, k = 1..60.
const std::vector<double>& bernoulli_over_factorial_d();

}  // namespace critline
