#pragma once

#include <span>
#include <vector>

namespace morphosim {

/// Thomas elimination for a tridiagonal system. `lower[i]` couples row i+1 to
/// column i, `upper[i]` couples row i to column i+1 (both of size n-1).
/// Throws NumericalError on a vanishing pivot.
std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs);

}  // namespace morphosim
