#include "ivdiff/geometry/modulus.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ivdiff::geometry {

Modulus Modulus::holder(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("holder exponent must lie in (0, 1]");
  return Modulus(Kind::holder, alpha);
}

Modulus Modulus::log_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("log_eps needs eps > 0");
  return Modulus(Kind::log_eps, eps);
}

Modulus Modulus::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  if (head == "navas_log" && colon == std::string::npos) return navas_log();
  if (colon != std::string::npos) {
    const double value = std::stod(text.substr(colon + 1));
    if (head == "holder") return holder(value);
    if (head == "log_eps") return log_eps(value);
  }
  throw std::invalid_argument("unknown modulus '" + text + "'");
}

std::string Modulus::name() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::holder:
      os << "holder:" << param_;
      break;
    case Kind::navas_log:
      os << "navas_log";
      break;
    case Kind::log_eps:
      os << "log_eps:" << param_;
      break;
  }
  return os.str();
}

double Modulus::operator()(double s) const {
  if (!(s > 0.0) || !std::isfinite(s)) throw std::domain_error("modulus evaluated at s <= 0");
  switch (kind_) {
    case Kind::holder:
      return std::pow(s, param_);
    case Kind::navas_log:
      if (s <= 1.0 / std::numbers::e) return 1.0 / std::log(1.0 / s);
      return std::numbers::e * s;
    case Kind::log_eps: {
      const double power = 1.0 + param_;
      const double threshold = std::exp(-power);
      if (s <= threshold) return s * std::pow(std::log(1.0 / s), power);
      return std::pow(power, power) * s;
    }
  }
  return 0.0;
}

}  // namespace ivdiff::geometry
