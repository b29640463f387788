#include "morphosim/tridiagonal.hpp"

#include <cmath>
#include <string>

#include "morphosim/error.hpp"

namespace morphosim {

std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (rhs.size() != n || (n > 0 && (lower.size() != n - 1 || upper.size() != n - 1))) {
    throw InvalidArgument("tridiagonal system has inconsistent sizes");
  }
  std::vector<double> c(n), x(n);
  double pivot = diag[0];
  if (pivot == 0.0) throw NumericalError("zero pivot in tridiagonal solve at row 0");
  c[0] = n > 1 ? upper[0] / pivot : 0.0;
  x[0] = rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = diag[i] - lower[i - 1] * c[i - 1];
    if (pivot == 0.0 || !std::isfinite(pivot)) {
      throw NumericalError("singular tridiagonal system at row " + std::to_string(i));
    }
    c[i] = i + 1 < n ? upper[i] / pivot : 0.0;
    x[i] = (rhs[i] - lower[i - 1] * x[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

}  // namespace morphosim
