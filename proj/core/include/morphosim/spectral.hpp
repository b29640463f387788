#pragma once

#include <span>
#include <vector>

namespace morphosim {

struct CosineCoefficients {
  std::vector<double> a;  // a[k-1] = a_k, k = 1..K
  bool aliased = false;   // K > m/2
};

/// a_k = 2 sum_j (f(y_j) - mean) cos(k pi y_j) dx on the cell centres.
CosineCoefficients cosine_coeffs(std::span<const double> field, int K);

/// Fourier coefficient of mu for a 2D profile mode: a_k / (pi (1 + sigma k^2)).
double ck_from_ak_2d(double a_k, double sigma, int k);

/// Time series of cosine coefficients of dphi, one row per output time.
class ModeSeries {
 public:
  explicit ModeSeries(int K = 0) : K_(K) {}

  void append(double t, std::span<const double> coeffs);

  int modes() const { return K_; }
  std::size_t size() const { return times_.size(); }
  const std::vector<double>& times() const { return times_; }
  std::span<const double> row(std::size_t i) const;
  /// a_k over time.
  std::vector<double> mode(int k) const;
  /// max_k |a_k| at each time.
  std::vector<double> max_amplitude() const;

 private:
  int K_;
  std::vector<double> times_;
  std::vector<double> values_;  // row-major
};

struct FitWindow {
  double t_start;
  double t_end;
};

struct RateFit {
  double rate = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int points = 0;
};

/// Least-squares slope of log|a_k| over the window. Throws InvalidArgument if
/// |a_k| leaves the linear regime in the window or fewer than 3 samples are
/// available, NumericalError on a sign change (oscillatory mode) or R^2 < 0.99.
RateFit fit_rate(const ModeSeries& series, int k, FitWindow window,
                 double max_amplitude = 1e-2, double min_r_squared = 0.99);

/// Starts `guard / sigma` after the first sample and ends at the last sample
/// before max_k |a_k| exceeds `max_amplitude`.
FitWindow auto_window(const ModeSeries& series, double sigma, double guard = 0.02,
                      double max_amplitude = 1e-2);

}  // namespace morphosim
