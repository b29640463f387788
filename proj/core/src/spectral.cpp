#include "morphosim/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "morphosim/error.hpp"

namespace morphosim {

using std::numbers::pi;

CosineCoefficients cosine_coeffs(std::span<const double> field, int K) {
  if (K < 1) throw InvalidArgument("need at least one cosine mode");
  if (field.empty()) throw InvalidArgument("empty field");
  const std::size_t n = field.size();
  const double dx = 1.0 / static_cast<double>(n);
  double mean = 0.0;
  for (double v : field) mean += v;
  mean /= static_cast<double>(n);

  CosineCoefficients out;
  out.aliased = K > static_cast<int>(n - 1) / 2;
  out.a.assign(K, 0.0);
  for (int k = 1; k <= K; ++k) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sum += (field[j] - mean) * std::cos(k * pi * (j + 0.5) * dx);
    }
    out.a[k - 1] = 2.0 * sum * dx;
  }
  return out;
}

double ck_from_ak_2d(double a_k, double sigma, int k) {
  if (k < 1) throw InvalidArgument("mode index must be >= 1");
  return a_k / (pi * (1.0 + sigma * k * k));
}

void ModeSeries::append(double t, std::span<const double> coeffs) {
  if (static_cast<int>(coeffs.size()) != K_) {
    throw InvalidArgument("mode series row has " + std::to_string(coeffs.size()) +
                          " entries, expected " + std::to_string(K_));
  }
  times_.push_back(t);
  values_.insert(values_.end(), coeffs.begin(), coeffs.end());
}

std::span<const double> ModeSeries::row(std::size_t i) const {
  return {values_.data() + i * K_, static_cast<std::size_t>(K_)};
}

std::vector<double> ModeSeries::mode(int k) const {
  if (k < 1 || k > K_) throw InvalidArgument("mode " + std::to_string(k) + " not recorded");
  std::vector<double> out(times_.size());
  for (std::size_t i = 0; i < times_.size(); ++i) out[i] = values_[i * K_ + k - 1];
  return out;
}

std::vector<double> ModeSeries::max_amplitude() const {
  std::vector<double> out(times_.size(), 0.0);
  for (std::size_t i = 0; i < times_.size(); ++i) {
    for (int k = 0; k < K_; ++k) out[i] = std::max(out[i], std::abs(values_[i * K_ + k]));
  }
  return out;
}

RateFit fit_rate(const ModeSeries& series, int k, FitWindow window, double max_amplitude,
                 double min_r_squared) {
  const std::vector<double> a = series.mode(k);
  const auto& t = series.times();
  std::vector<double> xs, ys;
  int sign = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < window.t_start || t[i] > window.t_end) continue;
    if (std::abs(a[i]) > max_amplitude) {
      throw InvalidArgument("mode " + std::to_string(k) + " leaves the linear regime at t = " +
                            std::to_string(t[i]));
    }
    if (a[i] == 0.0) throw NumericalError("mode " + std::to_string(k) + " vanishes in window");
    const int s = a[i] > 0.0 ? 1 : -1;
    if (sign != 0 && s != sign) {
      throw NumericalError("mode " + std::to_string(k) + " changes sign at t = " +
                           std::to_string(t[i]) + " (oscillatory)");
    }
    sign = s;
    xs.push_back(t[i]);
    ys.push_back(std::log(std::abs(a[i])));
  }
  const std::size_t n = xs.size();
  if (n < 3) throw InvalidArgument("fewer than 3 samples in the fit window");

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw InvalidArgument("fit window has zero time extent");
  RateFit fit;
  fit.rate = sxy / sxx;
  fit.intercept = my - fit.rate * mx;
  fit.points = static_cast<int>(n);
  fit.r_squared = syy == 0.0 ? 1.0 : sxy * sxy / (sxx * syy);
  if (fit.r_squared < min_r_squared) {
    throw NumericalError("rate fit for mode " + std::to_string(k) + " has R^2 = " +
                         std::to_string(fit.r_squared));
  }
  return fit;
}

FitWindow auto_window(const ModeSeries& series, double sigma, double guard,
                      double max_amplitude) {
  if (series.size() == 0) throw InvalidArgument("empty mode series");
  if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
  const auto& t = series.times();
  const std::vector<double> amp = series.max_amplitude();
  FitWindow w{t.front() + guard / sigma, t.front()};
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (amp[i] > max_amplitude) break;
    w.t_end = t[i];
  }
  return w;
}

}  // namespace morphosim
