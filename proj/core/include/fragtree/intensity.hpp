#pragma once

#include <stdexcept>
#include <string>

namespace fragtree {

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

struct QuadratureOptions {
  /// Relative tolerance handed to the adaptive Gauss-Kronrod rule.
  double tolerance = 1e-13;
  /// The contour is truncated where the integrand envelope drops below
  /// exp(-truncation_log) times its peak.
  double truncation_log = 45.0;
  /// Evaluation fails when the error estimate exceeds this.
  double max_residual = 1e-8;
  unsigned max_depth = 18;
};

/// Density p_s(z) of a spectrally positive strictly stable process X with
/// E exp(-lambda X(s)) = exp(c s lambda^alpha), c = 1 for alpha < 2 and
/// c = 1/2 for alpha = 2.
///
/// For alpha < 2 the Laplace transform is inverted along a Bromwich contour:
/// a vertical line through the real saddle point when z <= 0, and a pair of
/// rays in the left half-plane when z > 0. Evaluations are reduced to s = 1
/// by scaling.
class StableDensityEvaluator {
 public:
  explicit StableDensityEvaluator(double alpha, QuadratureOptions options = {});

  double alpha() const noexcept { return alpha_; }
  /// The constant c in the Laplace exponent.
  double laplace_constant() const noexcept { return alpha_ == 2.0 ? 0.5 : 1.0; }

  double operator()(double s, double z) const;
  /// p_1(z).
  double unit(double z) const;

 private:
  double vertical_line(double z) const;
  double ray(double z) const;
  double scaled_ray(double z) const;

  double alpha_;
  double theta_;
  QuadratureOptions options_;
};

double stable_density(double alpha, double s, double z);

/// z^{-1} p_z(-t z): density of the Levy intensity of the fragment masses.
double levy_intensity(double alpha, double t, double z);

/// Integral of z times the Levy intensity over (0, inf). Equals
/// 1 / ((alpha - 1) t).
double intensity_mass_moment(double alpha, double t);

/// Integral of p_s over [lo, hi]; infinite bounds are allowed.
double integrate_density(double alpha, double s, double lo, double hi);

}  // namespace fragtree
