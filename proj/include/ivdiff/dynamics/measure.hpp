#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ivdiff/dynamics/pl.hpp"

namespace ivdiff::dynamics {

/// Finite sum of point masses. When `window` is set the list is a
/// truncation of an infinite configuration to [window.first, window.second].
struct AtomicMeasure {
  std::vector<std::pair<Rational, Rational>> atoms;  // (position, mass)
  std::optional<std::pair<Rational, Rational>> window;

  void validate() const;
  /// Mass of [lo, hi).
  Rational mass(const Rational& lo, const Rational& hi) const;

  /// {"atoms": [[pos, mass], ...], "window": [lo, hi]}; entries are "p/q"
  /// strings or integers, "window" is optional.
  static AtomicMeasure from_json(const std::string& text);
  std::string to_json() const;
};

struct TranslationNumber {
  Rational value;
  bool measure_preserved = true;  // false: the value follows the definition only
  std::string warning;
};

/// Signed mass of [x0, g(x0)) or [g(x0), x0). Throws std::domain_error when
/// x0 or g(x0) leaves the domain or the window.
TranslationNumber translation_number(const AtomicMeasure& mu, const PLHomeo& g, const Rational& x0);

/// Empty when g maps the atoms inside the window (and inside dom g) to atoms
/// of equal mass, and every atom there is hit.
std::string invariance_problem(const AtomicMeasure& mu, const PLHomeo& g);

}  // namespace ivdiff::dynamics
