#include "morphosim/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include <Eigen/Dense>

#include "morphosim/error.hpp"

namespace morphosim {

using std::numbers::pi;
using cd = std::complex<double>;

namespace {

void check_inputs(double sigma, double nu, Dimension dim) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("sigma must be positive");
  if (dim == Dimension::three && !(nu > 0.0 && nu < 1.0)) {
    throw InvalidArgument("nu must lie in (0, 1)");
  }
}

cd eval(const std::array<double, 5>& n, cd z) {
  return (((n[4] * z + n[3]) * z + n[2]) * z + n[1]) * z + n[0];
}

cd eval_derivative(const std::array<double, 5>& n, cd z) {
  return ((4.0 * n[4] * z + 3.0 * n[3]) * z + 2.0 * n[2]) * z + n[1];
}

// N(k) = A_k + sigma B_k.
std::array<double, 2> sigma_split(Dimension dim, double d, double nu, int k) {
  const double kk = k;
  if (dim == Dimension::two) {
    return {(1.0 - d) + (d - 2.0) * kk * kk, kk * kk - 2.0 * kk * kk * kk * kk};
  }
  const double A = (1.0 - nu) * (1.0 - 2.0 * d) + (1.0 - (1.0 - nu) * d) * kk +
                   ((1.0 - nu) * d - 1.0) * kk * kk;
  const double B = -(1.0 - nu) * kk - nu * kk * kk + 2.0 * kk * kk * kk - kk * kk * kk * kk;
  return {A, B};
}

}  // namespace

double StabilityPolynomial::numerator(double k) const { return eval(n, cd(k)).real(); }

double StabilityPolynomial::denominator(double k) const {
  if (dim == Dimension::two) return pi * (1.0 + sigma * k * k);
  return pi * (sigma * k * k - sigma * k + 1.0);
}

double StabilityPolynomial::rate(double k) const { return numerator(k) / denominator(k); }

std::vector<int> StabilityPolynomial::unstable_modes() const {
  const std::vector<double> real = real_roots(formula_roots(*this));
  int kmax = first_mode();
  if (!real.empty()) kmax = std::max(kmax, static_cast<int>(std::ceil(real.front())) + 1);
  std::vector<int> out;
  for (int k = first_mode(); k <= kmax; ++k) {
    if (numerator(k) > 0.0) out.push_back(k);
  }
  return out;
}

StabilityPolynomial dispersion_2d(double sigma, double d) {
  check_inputs(sigma, 0.5, Dimension::two);
  StabilityPolynomial p;
  p.dim = Dimension::two;
  p.sigma = sigma;
  p.d = d;
  p.n = {1.0 - d, 0.0, sigma - 2.0 + d, 0.0, -2.0 * sigma};
  p.G1 = 1.0 + (d - 2.0) / sigma;
  p.G2 = 1.0 + 2.0 * (2.0 - 3.0 * d) / sigma + (d - 2.0) * (d - 2.0) / (sigma * sigma);
  return p;
}

StabilityPolynomial dispersion_3d(double sigma, double d, double nu) {
  check_inputs(sigma, nu, Dimension::three);
  StabilityPolynomial p;
  p.dim = Dimension::three;
  p.sigma = sigma;
  p.d = d;
  p.nu = nu;
  const double a = 1.0 - nu;
  p.n = {a * (1.0 - 2.0 * d), -a * (sigma + d) + 1.0, -nu * sigma - 1.0 + a * d, 2.0 * sigma,
         -sigma};
  p.G1 = 3.0 - 2.0 * nu + 2.0 * (a * d - 1.0) / sigma;
  p.G2 = a * a - 2.0 * a * ((3.0 + nu) * d - 1.0) / sigma +
         (a * d - 1.0) * (a * d - 1.0) / (sigma * sigma);
  return p;
}

StabilityPolynomial dispersion(Dimension dim, double sigma, double d, double nu) {
  return dim == Dimension::two ? dispersion_2d(sigma, d) : dispersion_3d(sigma, d, nu);
}

Roots roots_2d(double sigma, double d) { return formula_roots(dispersion_2d(sigma, d)); }

Roots roots_3d(double sigma, double d, double nu) {
  return formula_roots(dispersion_3d(sigma, d, nu));
}

Roots formula_roots(const StabilityPolynomial& poly) {
  const cd root_g2 = std::sqrt(cd(poly.G2));
  if (poly.dim == Dimension::two) {
    const cd a = 0.5 * std::sqrt(poly.G1 + root_g2);
    const cd b = 0.5 * std::sqrt(poly.G1 - root_g2);
    return {a, -a, b, -b};
  }
  const cd a = 0.5 * std::sqrt(poly.G1 + 2.0 * root_g2);
  const cd b = 0.5 * std::sqrt(poly.G1 - 2.0 * root_g2);
  return {0.5 + a, 0.5 - a, 0.5 + b, 0.5 - b};
}

Roots companion_roots(const StabilityPolynomial& poly) {
  const auto& n = poly.n;
  Eigen::Matrix4d C = Eigen::Matrix4d::Zero();
  for (int i = 0; i < 4; ++i) C(0, i) = -n[3 - i] / n[4];
  C(1, 0) = C(2, 1) = C(3, 2) = 1.0;
  Eigen::EigenSolver<Eigen::Matrix4d> solver(C, false);
  if (solver.info() != Eigen::Success) throw NumericalError("companion eigensolve failed");
  Roots out;
  for (int i = 0; i < 4; ++i) {
    cd z = solver.eigenvalues()[i];
    for (int it = 0; it < 4; ++it) {
      const cd dp = eval_derivative(n, z);
      if (std::abs(dp) == 0.0) break;
      const cd next = z - eval(n, z) / dp;
      if (!(std::abs(eval(n, next)) < std::abs(eval(n, z)))) break;
      z = next;
    }
    out[i] = z;
  }
  return out;
}

double root_mismatch(const Roots& a, const Roots& b) {
  std::array<bool, 4> used{};
  double worst = 0.0;
  for (const cd& z : a) {
    int best = -1;
    double dist = 0.0;
    for (int i = 0; i < 4; ++i) {
      if (used[i]) continue;
      const double e = std::abs(z - b[i]);
      if (best < 0 || e < dist) {
        best = i;
        dist = e;
      }
    }
    used[best] = true;
    worst = std::max(worst, dist / std::max(1.0, std::abs(z)));
  }
  return worst;
}

std::vector<double> real_roots(const Roots& roots, double tol) {
  std::vector<double> out;
  for (const cd& z : roots) {
    if (std::abs(z.imag()) <= tol * std::max(1.0, std::abs(z))) out.push_back(z.real());
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

double necessary_condition(Dimension dim, double sigma, double nu) {
  check_inputs(sigma, nu, dim);
  if (dim == Dimension::two) return 2.0 + 3.0 * sigma;
  return (1.0 + (3.0 + nu) * sigma) / (1.0 - nu);
}

double elimination_residual(const StabilityPolynomial& p) {
  if (p.dim == Dimension::two) {
    return p.G2 - (4.0 - p.G1) * (4.0 - p.G1) + 8.0 * (1.0 + 1.0 / p.sigma);
  }
  return 4.0 * p.G2 - (9.0 - p.G1) * (9.0 - p.G1) +
         16.0 * (1.0 + p.nu) * (2.0 + 1.0 / p.sigma);
}

double lambda_k(Dimension dim, double sigma, double d, double nu, int k, double prefactor) {
  const StabilityPolynomial p = dispersion(dim, sigma, d, nu);
  if (k < p.first_mode()) throw InvalidArgument("mode below the first admissible mode");
  return prefactor * p.rate(k);
}

std::vector<double> matrix_oracle_3d(double sigma, double d, double nu, int K) {
  check_inputs(sigma, nu, Dimension::three);
  if (K < 2) throw InvalidArgument("truncation K must be >= 2");
  const int n = K - 1;
  using Mat = Eigen::MatrixXd;
  Mat M1 = Mat::Zero(n, n), M2 = Mat::Zero(n, n), M3 = Mat::Zero(n, n);
  Mat N1 = Mat::Zero(n, n), N2 = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double k = i + 2;
    const double r = pi * (1.0 - nu) * k * (k * k - 4.0);
    const double diag[5] = {pi * (2.0 + k),
                            -k * k * k - k * k + (3.0 - nu) * k + 2.0 * (1.0 - nu), r,
                            pi * (k - sigma * k * k + sigma * k * k * k), k + 1.0};
    const double super[5] = {pi * (2.0 - k),
                             k * k * k - k * k - (3.0 - nu) * k + 2.0 * (1.0 - nu), -r,
                             -pi * (k + sigma * k * k + sigma * k * k * k), -(k - 1.0)};
    Mat* mats[5] = {&M1, &M2, &M3, &N1, &N2};
    for (int m = 0; m < 5; ++m) {
      (*mats[m])(i, i) = diag[m];
      if (i + 2 < n) (*mats[m])(i, i + 2) = super[m];
    }
  }
  const Mat C = N1.triangularView<Eigen::Upper>().solve(N2);
  const Mat rhs = M2 + d * (M3 * C);
  const Mat M = M1.triangularView<Eigen::Upper>().solve(rhs);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = M(i, i);
  return out;
}

double Range::at(int i) const {
  if (count <= 1) return lo;
  return lo + (hi - lo) * static_cast<double>(i) / (count - 1);
}

const RegionCell& RegionScan::at(int i_d, int j_sigma) const {
  return cells.at(static_cast<std::size_t>(i_d) * sigma_values.size() + j_sigma);
}

double critical_sigma(Dimension dim, double d, double nu, int* mode) {
  const int first = dim == Dimension::two ? 1 : 2;
  double best = 0.0;
  int best_k = 0;
  for (int k = first; k <= 2000; ++k) {
    const auto [A, B] = sigma_split(dim, d, nu, k);
    if (A > 0.0 && B < 0.0) {
      const double s = A / -B;
      if (s > best) {
        best = s;
        best_k = k;
      }
    }
  }
  if (mode) *mode = best_k;
  return best;
}

double root_gap(const StabilityPolynomial& poly) {
  const std::vector<double> r = real_roots(formula_roots(poly));
  if (r.size() < 2) return -1.0;
  return r[0] - r[1];
}

RegionScan region_scan(Dimension dim, double nu, Range d_range, Range sigma_range, int jobs) {
  if (d_range.count < 1 || sigma_range.count < 1) throw InvalidArgument("empty scan range");
  if (!(sigma_range.lo > 0.0) || !(sigma_range.hi > 0.0)) {
    throw InvalidArgument("sigma range must be positive");
  }
  if (d_range.hi < d_range.lo || sigma_range.hi < sigma_range.lo) {
    throw InvalidArgument("scan ranges must be increasing");
  }
  check_inputs(sigma_range.lo, nu, dim);

  RegionScan scan;
  scan.dim = dim;
  scan.nu = nu;
  for (int i = 0; i < d_range.count; ++i) scan.d_values.push_back(d_range.at(i));
  for (int j = 0; j < sigma_range.count; ++j) scan.sigma_values.push_back(sigma_range.at(j));
  const int nd = d_range.count;
  const int ns = sigma_range.count;
  scan.cells.resize(static_cast<std::size_t>(nd) * ns);
  scan.boundary.resize(nd);
  std::vector<std::vector<std::array<double, 2>>> gap_points(nd);

  auto work = [&](int i) {
    const double d = scan.d_values[i];
    for (int j = 0; j < ns; ++j) {
      const double s = scan.sigma_values[j];
      const std::vector<int> modes = dispersion(dim, s, d, nu).unstable_modes();
      scan.cells[static_cast<std::size_t>(i) * ns + j] =
          RegionCell{d, s, modes.empty(), modes.empty() ? 0 : modes.front()};
    }
    scan.boundary[i] = {d, critical_sigma(dim, d, nu)};

    auto f = [&](double s) { return root_gap(dispersion(dim, s, d, nu)) - 1.0; };
    double prev = f(scan.sigma_values[0]);
    for (int j = 1; j < ns; ++j) {
      const double cur = f(scan.sigma_values[j]);
      if ((prev > 0.0) != (cur > 0.0)) {
        double lo = scan.sigma_values[j - 1], hi = scan.sigma_values[j];
        const bool lo_positive = prev > 0.0;
        for (int it = 0; it < 100; ++it) {
          const double mid = 0.5 * (lo + hi);
          ((f(mid) > 0.0) == lo_positive ? lo : hi) = mid;
        }
        const double s = 0.5 * (lo + hi);
        if (std::abs(f(s)) < 1e-6) gap_points[i].push_back({d, s});
      }
      prev = cur;
    }
  };

  const int workers = std::clamp(jobs, 1, nd);
  if (workers == 1) {
    for (int i = 0; i < nd; ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int i = w; i < nd; i += workers) work(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  for (auto& pts : gap_points) {
    scan.root_gap_curve.insert(scan.root_gap_curve.end(), pts.begin(), pts.end());
  }
  for (double s : scan.sigma_values) scan.necessary_curve.push_back({necessary_condition(dim, s, nu), s});

  // Sanity: along sigma the classification must switch at most once, and the
  // boundary should not decrease in d.
  for (int i = 0; i < nd; ++i) {
    for (int j = 1; j < ns; ++j) {
      if (scan.at(i, j - 1).stable && !scan.at(i, j).stable) {
        std::ostringstream msg;
        msg << "unstable cell above a stable one at d = " << scan.d_values[i]
            << ", sigma = " << scan.sigma_values[j];
        scan.warnings.push_back(msg.str());
      }
    }
    if (i > 0 && scan.boundary[i][1] < scan.boundary[i - 1][1]) {
      std::ostringstream msg;
      msg << "stability boundary decreases between d = " << scan.d_values[i - 1] << " and d = "
          << scan.d_values[i];
      scan.warnings.push_back(msg.str());
    }
  }
  return scan;
}

}  // namespace morphosim
