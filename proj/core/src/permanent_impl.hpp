#pragma once

#include <complex>

namespace biphoton::detail {

/// Permanent of an n x n column-major matrix, n <= 12 (unchecked).
std::complex<double> ryser(const std::complex<double>* a, int n);

}  // namespace biphoton::detail
