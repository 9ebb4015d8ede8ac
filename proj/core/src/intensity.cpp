#include "fragtree/intensity.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace fragtree {
namespace {

using Complex = std::complex<double>;
using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;

Complex cpow(Complex z, double a) {
  if (z == Complex(0.0, 0.0)) return 0.0;
  return std::exp(a * std::log(z));
}

// exp(w) - 1 without cancellation for small |w|.
Complex cexpm1(Complex w) {
  const double x = w.real();
  const double y = w.imag();
  const double half_sin = std::sin(0.5 * y);
  const double re = std::expm1(x) * std::cos(y) - 2.0 * half_sin * half_sin;
  const double im = std::exp(x) * std::sin(y);
  return {re, im};
}

void check_alpha(double alpha) {
  if (!(alpha > 1.0 && alpha <= 2.0)) {
    throw std::invalid_argument("alpha must lie in (1, 2]");
  }
}

double gaussian_density(double s, double z) {
  return std::exp(-z * z / (2.0 * s)) / std::sqrt(2.0 * std::numbers::pi * s);
}

}  // namespace

StableDensityEvaluator::StableDensityEvaluator(double alpha, QuadratureOptions options)
    : alpha_(alpha), options_(options) {
  check_alpha(alpha);
  const double pi = std::numbers::pi;
  theta_ = 0.5 * (0.5 * pi + std::min(pi, 1.5 * pi / alpha));
}

double StableDensityEvaluator::operator()(double s, double z) const {
  if (!(s > 0.0)) throw std::invalid_argument("time s must be positive");
  if (alpha_ == 2.0) return gaussian_density(s, z);
  const double scale = std::pow(s, -1.0 / alpha_);
  return scale * unit(z * scale);
}

double StableDensityEvaluator::unit(double z) const {
  if (std::isnan(z)) throw std::invalid_argument("z is NaN");
  if (alpha_ == 2.0) return gaussian_density(1.0, z);
  if (std::isinf(z)) return 0.0;
  double p = 0.0;
  if (z <= 0.0) {
    p = vertical_line(z);
  } else if (z <= 1.0) {
    p = ray(z);
  } else {
    p = scaled_ray(z);
  }
  if (p < 0.0) {
    if (p < -1e-10) throw QuadratureError("stable density came out negative", -p);
    p = 0.0;
  }
  return p;
}

double StableDensityEvaluator::vertical_line(double z) const {
  const double a = alpha_;
  const double c = std::pow(-z / a, 1.0 / (a - 1.0));
  const double peak = c * z * (a - 1.0) / a;
  if (!(peak > -700.0)) return 0.0;
  const auto log_envelope = [&](double y) { return (cpow(Complex(c, y), a)).real() + c * z - peak; };
  double upper = 1.0;
  while (log_envelope(upper) > -options_.truncation_log) upper *= 2.0;
  const auto f = [&](double y) {
    const Complex lambda(c, y);
    return std::exp(lambda * z + cpow(lambda, a) - peak).real();
  };
  double error = 0.0;
  double l1 = 0.0;
  const double value = Rule::integrate(f, 0.0, upper, options_.max_depth, options_.tolerance,
                                       &error, &l1);
  const double factor = std::exp(peak) / std::numbers::pi;
  const double residual = factor * (error + std::exp(-options_.truncation_log) * upper);
  if (residual > options_.max_residual) {
    throw QuadratureError("vertical-line inversion did not converge", residual);
  }
  return factor * value;
}

double StableDensityEvaluator::ray(double z) const {
  const double a = alpha_;
  const Complex dir = std::polar(1.0, theta_);
  const Complex dir_a = std::polar(1.0, a * theta_);
  const double decay = -dir_a.real();
  const double upper = std::pow(options_.truncation_log / decay, 1.0 / a);
  const auto f = [&](double r) {
    return (dir * std::exp(z * r * dir + std::pow(r, a) * dir_a)).imag();
  };
  double error = 0.0;
  const double value = Rule::integrate(f, 0.0, upper, options_.max_depth, options_.tolerance,
                                       &error);
  const double residual = (error + std::exp(-options_.truncation_log)) / std::numbers::pi;
  if (residual > options_.max_residual) {
    throw QuadratureError("ray inversion did not converge", residual);
  }
  return value / std::numbers::pi;
}

double StableDensityEvaluator::scaled_ray(double z) const {
  const double a = alpha_;
  const Complex dir = std::polar(1.0, theta_);
  const Complex dir_a = std::polar(1.0, a * theta_);
  const double upper = (options_.truncation_log + std::log(2.0)) / -dir.real();
  const auto f = [&](double rho) {
    const Complex w = std::pow(rho / z, a) * dir_a;
    return (dir * std::exp(rho * dir) * cexpm1(w)).imag();
  };
  double error = 0.0;
  const double value = Rule::integrate(f, 0.0, upper, options_.max_depth, options_.tolerance,
                                       &error);
  const double residual = (error + 2.0 * std::exp(-options_.truncation_log)) /
                          (std::numbers::pi * z);
  if (residual > options_.max_residual) {
    throw QuadratureError("scaled ray inversion did not converge", residual);
  }
  return value / (std::numbers::pi * z);
}

double stable_density(double alpha, double s, double z) {
  return StableDensityEvaluator(alpha)(s, z);
}

double levy_intensity(double alpha, double t, double z) {
  if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  if (!(z > 0.0)) throw std::invalid_argument("z must be positive");
  return StableDensityEvaluator(alpha)(z, -t * z) / z;
}

double intensity_mass_moment(double alpha, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  const StableDensityEvaluator eval(alpha);
  boost::math::quadrature::exp_sinh<double> integrator;
  double error = 0.0;
  const double value = integrator.integrate(
      [&](double z) { return z > 0.0 ? eval(z, -t * z) : 0.0; }, 0.0,
      std::numeric_limits<double>::infinity(), 1e-10, &error);
  if (error > 1e-8 * std::max(1.0, std::abs(value))) {
    throw QuadratureError("mass moment integral did not converge", error);
  }
  return value;
}

double integrate_density(double alpha, double s, double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("integration bounds out of order");
  const StableDensityEvaluator eval(alpha);
  const auto f = [&](double z) { return eval(s, z); };
  if (lo == hi) return 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  if (std::isinf(lo) && std::isinf(hi)) {
    return integrate_density(alpha, s, -inf, 0.0) + integrate_density(alpha, s, 0.0, inf);
  }
  double error = 0.0;
  if (std::isinf(hi)) {
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate([&](double u) { return f(lo + u); }, 0.0, inf, 1e-10, &error);
  }
  if (std::isinf(lo)) {
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate([&](double u) { return f(hi - u); }, 0.0, inf, 1e-10, &error);
  }
  return Rule::integrate(f, lo, hi, 20, 1e-12, &error);
}

}  // namespace fragtree
