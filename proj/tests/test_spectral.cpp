#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <morphosim/error.hpp>
#include <morphosim/spectral.hpp>

using namespace morphosim;
using std::numbers::pi;

namespace {

std::vector<double> sample(int m, auto f) {
  std::vector<double> v(m + 1);
  for (int j = 0; j <= m; ++j) v[j] = f((j + 0.5) / (m + 1));
  return v;
}

ModeSeries exponential_series(double amplitude, double rate, int K = 3, int k = 2) {
  ModeSeries s(K);
  std::vector<double> row(K, 0.0);
  for (int i = 0; i <= 50; ++i) {
    const double t = 0.1 * i;
    row[k - 1] = amplitude * std::exp(rate * t);
    s.append(t, row);
  }
  return s;
}

}  // namespace

TEST(CosineCoeffs, PicksSingleMode) {
  const auto f = sample(199, [](double y) { return std::cos(3.0 * pi * y); });
  const CosineCoefficients c = cosine_coeffs(f, 8);
  EXPECT_FALSE(c.aliased);
  for (int k = 1; k <= 8; ++k) EXPECT_NEAR(c.a[k - 1], k == 3 ? 1.0 : 0.0, 1e-12) << "k=" << k;
}

TEST(CosineCoeffs, ConstantHasNoModes) {
  const std::vector<double> f(101, pi);
  for (double a : cosine_coeffs(f, 10).a) EXPECT_NEAR(a, 0.0, 1e-14);
}

TEST(CosineCoeffs, LinearInTheField) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> f(151), g(151), h(151);
  for (std::size_t j = 0; j < f.size(); ++j) {
    f[j] = u(rng);
    g[j] = u(rng);
    h[j] = 0.3 * f[j] - 2.0 * g[j];
  }
  const auto cf = cosine_coeffs(f, 12).a, cg = cosine_coeffs(g, 12).a, ch = cosine_coeffs(h, 12).a;
  for (int k = 0; k < 12; ++k) EXPECT_NEAR(ch[k], 0.3 * cf[k] - 2.0 * cg[k], 1e-13);
}

TEST(CosineCoeffs, RandomMixtureRecovered) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> amp(10);
  for (double& a : amp) a = u(rng);
  const auto f = sample(255, [&](double y) {
    double v = 0.0;
    for (int k = 1; k <= 10; ++k) v += amp[k - 1] * std::cos(k * pi * y);
    return v;
  });
  const auto a = cosine_coeffs(f, 10).a;
  for (int k = 0; k < 10; ++k) EXPECT_NEAR(a[k], amp[k], 1e-12);
}

TEST(CosineCoeffs, SecondOrderAgainstQuadrature) {
  // Non-polynomial field: a_2 of exp(y) is 2 (e - 1) / (1 + 4 pi^2).
  const double exact = 2.0 * (std::exp(1.0) - 1.0) / (1.0 + 4.0 * pi * pi);
  auto error = [&](int m) {
    return std::abs(cosine_coeffs(sample(m, [](double y) { return std::exp(y); }), 2).a[1] - exact);
  };
  EXPECT_GT(std::log2(error(99) / error(199)), 1.9);
}

TEST(CosineCoeffs, FlagsAliasing) {
  EXPECT_TRUE(cosine_coeffs(std::vector<double>(11, 0.0), 8).aliased);
  EXPECT_FALSE(cosine_coeffs(std::vector<double>(101, 0.0), 8).aliased);
}

TEST(CkFromAk, Limits) {
  EXPECT_DOUBLE_EQ(ck_from_ak_2d(0.3, 0.0, 5), 0.3 / pi);
  EXPECT_NEAR(ck_from_ak_2d(0.3, 0.1, 1000), 0.0, 1e-6);
  EXPECT_DOUBLE_EQ(ck_from_ak_2d(1.0, 0.05, 2), 1.0 / (pi * 1.2));
}

TEST(FitRate, SyntheticExponential) {
  const ModeSeries s = exponential_series(1e-5, 0.7);
  const RateFit fit = fit_rate(s, 2, {0.0, 5.0});
  EXPECT_NEAR(fit.rate, 0.7, 1e-12);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
  EXPECT_EQ(fit.points, 51);
}

TEST(FitRate, AmplitudeInvariant) {
  const double a = fit_rate(exponential_series(1e-5, -0.4), 2, {0.5, 4.5}).rate;
  const double b = fit_rate(exponential_series(3.7e-8, -0.4), 2, {0.5, 4.5}).rate;
  EXPECT_NEAR(a, b, 1e-12);
}

TEST(FitRate, RefusesBadInput) {
  // Leaves the linear regime.
  EXPECT_THROW(fit_rate(exponential_series(1e-3, 1.0), 2, {0.0, 5.0}), InvalidArgument);
  // Too few samples.
  EXPECT_THROW(fit_rate(exponential_series(1e-5, 0.1), 2, {0.0, 0.15}), InvalidArgument);
  // Oscillating sign.
  ModeSeries osc(1);
  for (int i = 0; i < 40; ++i) {
    const double v = 1e-4 * std::cos(2.0 * i * 0.1);
    osc.append(0.1 * i, std::vector<double>{v});
  }
  EXPECT_THROW(fit_rate(osc, 1, {0.0, 3.9}), NumericalError);
}

TEST(FitRate, AutoWindowStopsBeforeNonlinearRegime) {
  // 1e-4 e^t crosses 1e-2 at t = 4.605; 4.6 is the last sample below.
  const ModeSeries s = exponential_series(1e-4, 1.0);
  const FitWindow w = auto_window(s, 0.05);
  EXPECT_NEAR(w.t_start, 0.4, 1e-12);
  EXPECT_NEAR(w.t_end, 4.6, 1e-12);
}

TEST(ModeSeries, RowsAndColumns) {
  ModeSeries s(2);
  s.append(0.0, std::vector<double>{1.0, -2.0});
  s.append(1.0, std::vector<double>{3.0, 0.5});
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.mode(2), (std::vector<double>{-2.0, 0.5}));
  EXPECT_EQ(s.max_amplitude(), (std::vector<double>{2.0, 3.0}));
  EXPECT_DOUBLE_EQ(s.row(1)[0], 3.0);
  EXPECT_THROW(s.append(2.0, std::vector<double>{1.0}), InvalidArgument);
}
