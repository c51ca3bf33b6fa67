#pragma once

#include <string>

namespace ivdiff::geometry {

/// Modulus of continuity sigma, increasing with sigma(s)/s non-increasing on
/// (0, infinity).
///   holder(alpha):  s^alpha
///   navas_log:      1/log(1/s) for s <= 1/e, e*s beyond
///   log_eps(eps):   s*log(1/s)^(1+eps) for s <= e^-(1+eps), linear beyond
class Modulus {
 public:
  enum class Kind { holder, navas_log, log_eps };

  static Modulus holder(double alpha);
  static Modulus navas_log() { return Modulus(Kind::navas_log, 0.0); }
  static Modulus log_eps(double eps);

  /// Parses "navas_log", "holder:0.5", "log_eps:0.1".
  static Modulus parse(const std::string& text);

  Kind kind() const { return kind_; }
  double parameter() const { return param_; }
  std::string name() const;

  /// Throws std::domain_error for s <= 0 or non-finite s.
  double operator()(double s) const;

 private:
  Modulus(Kind kind, double param) : kind_(kind), param_(param) {}

  Kind kind_;
  double param_;
};

}  // namespace ivdiff::geometry
