#include "ivdiff/geometry/family.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ivdiff::geometry {

namespace {

void check_args(double u, double v, double x) {
  if (!(u > 0.0) || !(v > 0.0) || !std::isfinite(u) || !std::isfinite(v))
    throw std::domain_error("phi needs u > 0 and v > 0");
  if (!(x >= 0.0 && x <= u)) throw std::domain_error("phi evaluated outside [0, u]");
}

// Evaluated on the half [0, u/2] where theta = pi x / u keeps full relative
// precision; the other half follows from phi(u - x) = v - phi(x).
struct Half {
  double theta;
  bool mirrored;
};

Half fold(double u, double x) {
  const bool mirrored = x > 0.5 * u;
  const double t = mirrored ? u - x : x;
  return {std::numbers::pi * (t / u), mirrored};
}

}  // namespace

std::string_view to_string(Family f) { return f == Family::affine ? "affine" : "yoccoz"; }

Family parse_family(std::string_view text) {
  if (text == "affine") return Family::affine;
  if (text == "yoccoz") return Family::yoccoz;
  throw std::invalid_argument("unknown family '" + std::string(text) + "'");
}

PhiJet phi_eval(Family f, double u, double v, double x) {
  check_args(u, v, x);
  if (f == Family::affine) return {v * (x / u), v / u};
  if (u == v) return {x, 1.0};
  const auto [theta, mirrored] = fold(u, x);
  const double rho = u / v;
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double derivative = 1.0 / (c * c + rho * rho * s * s);
  // atan(rho tan(theta)) without forming tan(pi/2).
  const double angle = std::atan2(rho * s, c);
  const double half_value = (v / std::numbers::pi) * angle;
  return {mirrored ? v - half_value : half_value, derivative};
}

double phi_second(Family f, double u, double v, double x) {
  check_args(u, v, x);
  if (f == Family::affine || u == v) return 0.0;
  const auto [theta, mirrored] = fold(u, x);
  const double rho = u / v;
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double denom = c * c + rho * rho * s * s;
  const double magnitude = (std::numbers::pi / u) * (rho * rho - 1.0) * (2.0 * s * c) / (denom * denom);
  return mirrored ? magnitude : -magnitude;
}

double yoccoz_chart(double u, double x) {
  if (x <= 0.0) return -std::numeric_limits<double>::infinity();
  if (x >= u) return std::numeric_limits<double>::infinity();
  const auto [theta, mirrored] = fold(u, x);
  const double y = std::cos(theta) / (std::sin(theta) * u);
  return mirrored ? y : -y;
}

}  // namespace ivdiff::geometry
