#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "morphosim/geometry.hpp"
#include "morphosim/growth_field.hpp"

namespace morphosim {

enum class Dimension { two = 2, three = 3 };

/// Extensibility law Psi = F(mu). Either a power mu^d or an arbitrary
/// increasing function given with its derivative.
class CouplingFunction {
 public:
  CouplingFunction() : CouplingFunction(power(1.0)) {}

  static CouplingFunction power(double exponent);
  static CouplingFunction custom(std::function<double(double)> f,
                                 std::function<double(double)> df,
                                 std::string name = "custom");

  double operator()(double mu) const { return f_(mu); }
  double derivative(double mu) const { return df_(mu); }

  /// The exponent for power laws, empty otherwise.
  std::optional<double> exponent() const { return exponent_; }
  const std::string& name() const { return name_; }

 private:
  CouplingFunction(std::function<double(double)> f, std::function<double(double)> df,
                   std::string name, std::optional<double> exponent)
      : f_(std::move(f)), df_(std::move(df)), name_(std::move(name)), exponent_(exponent) {}

  std::function<double(double)> f_;
  std::function<double(double)> df_;
  std::string name_;
  std::optional<double> exponent_;
};

/// F'(mu) mu / F(mu).
double degree_of_nonlinearity(const CouplingFunction& F, double mu);

struct ModelParams {
  double P = 1.0;
  double nu = 0.5;
  CouplingFunction F = CouplingFunction::power(4.0);
  Dimension dim = Dimension::three;
  bool inflating = false;

  // Fixed-L mode.
  double sigma = 0.05;
  // Inflating mode.
  double gamma = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  /// Throws InvalidArgument naming the offending field.
  void validate() const;

  /// sigma in fixed-L mode, gamma pi^2 / (alpha L^2) when inflating.
  double reduced_diffusion(double L) const;

  /// mu of the radial solution: beta pi^2/(alpha L^2) in 3D, beta pi/(alpha L)
  /// in 2D; 1 in fixed-L mode, where densities are normalized by it.
  double radial_density(double L) const;

  /// Psi of the radial solution: F(radial density) when inflating, 1 in
  /// fixed-L mode.
  double radial_extensibility(double L) const;

  /// Psi on the cell centres: F(mu_c mu~) when inflating, F(mu~)/F(1) in
  /// fixed-L mode.
  std::vector<double> extensibility(const GrowthField& field, double L) const;
};

struct Stresses {
  std::vector<double> sigma_s;      // nodes
  std::vector<double> sigma_theta;  // nodes
};

/// sigma_s = P/(2 kappa_theta), sigma_theta = sigma_s (2 - kappa_s/kappa_theta).
Stresses stresses(const WallProfile& profile, double P);
Stresses stresses_from_curvatures(const Curvatures& k, double P);

struct Lambdas {
  std::vector<double> lambda1;  // cell centres
  std::vector<double> lambda2;
};

/// Nondimensional forcing of the 3D evolution equation, on the cell centres.
Lambdas lambdas(const WallProfile& profile, std::span<const double> psi,
                const ModelParams& params);
Lambdas lambdas(const WallProfile& profile, const ProfileGeometry& geo,
                std::span<const double> psi, const ModelParams& params);

struct Velocities {
  std::vector<double> v_n;    // nodes
  std::vector<double> v_tau;  // nodes
};

/// Normal and tangential wall velocities (length/time) on the nodes. `psi` is
/// given on the cell centres. Diagnostic only.
Velocities recover_velocities(const WallProfile& profile, std::span<const double> psi,
                              const ModelParams& params);

}  // namespace morphosim
