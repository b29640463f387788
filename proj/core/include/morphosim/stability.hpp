#pragma once

#include <array>
#include <complex>
#include <vector>

#include "morphosim/mechanics.hpp"

namespace morphosim {

/// Dispersion polynomial N(k) = sum_i n_i k^i of the radial solution and its
/// positive denominator D(k). In 2D n1 = n3 = 0.
struct StabilityPolynomial {
  Dimension dim = Dimension::three;
  double sigma = 0.0;
  double d = 0.0;
  double nu = 0.0;
  std::array<double, 5> n{};
  double G1 = 0.0;
  double G2 = 0.0;

  double numerator(double k) const;
  double denominator(double k) const;
  /// N(k)/D(k).
  double rate(double k) const;
  /// Smallest mode considered: 1 in 2D, 2 in 3D.
  int first_mode() const { return dim == Dimension::two ? 1 : 2; }
  /// Integer modes k >= first_mode() with N(k) > 0.
  std::vector<int> unstable_modes() const;
};

StabilityPolynomial dispersion_2d(double sigma, double d);
StabilityPolynomial dispersion_3d(double sigma, double d, double nu);
StabilityPolynomial dispersion(Dimension dim, double sigma, double d, double nu);

using Roots = std::array<std::complex<double>, 4>;

/// +-(1/2) sqrt(G1 +- sqrt(G2)).
Roots roots_2d(double sigma, double d);
/// 1/2 +- (1/2) sqrt(G1 +- 2 sqrt(G2)).
Roots roots_3d(double sigma, double d, double nu);
Roots formula_roots(const StabilityPolynomial& poly);

/// Eigenvalues of the companion matrix of N, each polished by Newton steps on
/// N itself.
Roots companion_roots(const StabilityPolynomial& poly);

/// Largest distance between a formula root and its matched companion root,
/// relative to max(1, |root|).
double root_mismatch(const Roots& a, const Roots& b);

/// Real roots in decreasing order (imaginary part below `tol` relative).
std::vector<double> real_roots(const Roots& roots, double tol = 1e-9);

/// Minimal d: 2 + 3 sigma (2D), (1 + (3 + nu) sigma)/(1 - nu) (3D).
double necessary_condition(Dimension dim, double sigma, double nu);

/// Residual of the elimination identity: G2 - (4 - G1)^2 + 8 (1 + 1/sigma)
/// (2D), 4 G2 - (9 - G1)^2 + 16 (1 + nu)(2 + 1/sigma) (3D).
double elimination_residual(const StabilityPolynomial& poly);

/// prefactor * N(k)/D(k).
double lambda_k(Dimension dim, double sigma, double d, double nu, int k, double prefactor = 1.0);

/// Diagonal of M1^-1 M2 + d M1^-1 M3 N1^-1 N2 for the truncated upper
/// triangular matrices indexed by k = 2..K; entry i is mode i + 2.
std::vector<double> matrix_oracle_3d(double sigma, double d, double nu, int K);

struct Range {
  double lo;
  double hi;
  int count;
  double at(int i) const;
};

struct RegionCell {
  double d;
  double sigma;
  bool stable;
  int smallest_unstable_k;  // 0 when stable
};

struct RegionScan {
  Dimension dim = Dimension::three;
  double nu = 0.0;
  std::vector<double> d_values;
  std::vector<double> sigma_values;
  std::vector<RegionCell> cells;  // d-major: cells[i * sigma_count + j]
  /// Exact integer-mode boundary: cells with sigma below sigma_crit(d) are
  /// unstable.
  std::vector<std::array<double, 2>> boundary;
  /// Points where the two largest real roots are exactly 1 apart.
  std::vector<std::array<double, 2>> root_gap_curve;
  /// (d_min(sigma), sigma) along the sigma grid.
  std::vector<std::array<double, 2>> necessary_curve;
  /// Non-fatal sanity findings (monotonicity of the boundary).
  std::vector<std::string> warnings;

  const RegionCell& at(int i_d, int j_sigma) const;
};

/// sup over integer modes of the sigma below which mode k is unstable;
/// N is affine in sigma with negative slope for every admissible k.
double critical_sigma(Dimension dim, double d, double nu, int* mode = nullptr);

/// Gap between the largest and second largest real root, or a negative value
/// when fewer than two real roots exist.
double root_gap(const StabilityPolynomial& poly);

RegionScan region_scan(Dimension dim, double nu, Range d_range, Range sigma_range,
                       int jobs = 1);

}  // namespace morphosim
