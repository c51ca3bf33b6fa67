#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace ivdiff::dynamics {

using Rational = mpq_class;

/// Accepts "p/q" or "p"; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);
/// Always "p/q", including q = 1.
std::string format_rational(const Rational& q);

/// Increasing piecewise-linear homeomorphism [xs.front(), xs.back()] ->
/// [ys.front(), ys.back()]. Collinear interior knots are dropped on
/// construction, so equal maps have equal knot lists.
class PLHomeo {
 public:
  PLHomeo(std::vector<Rational> xs, std::vector<Rational> ys);

  static PLHomeo identity(const Rational& lo, const Rational& hi);

  const std::vector<Rational>& xs() const { return xs_; }
  const std::vector<Rational>& ys() const { return ys_; }
  const Rational& domain_lo() const { return xs_.front(); }
  const Rational& domain_hi() const { return xs_.back(); }
  const Rational& range_lo() const { return ys_.front(); }
  const Rational& range_hi() const { return ys_.back(); }

  bool in_domain(const Rational& x) const;
  bool in_range(const Rational& y) const;

  /// Throws std::domain_error outside the domain.
  Rational operator()(const Rational& x) const;
  /// Inverse evaluation; throws std::domain_error outside the range.
  Rational preimage(const Rational& y) const;

  bool is_identity() const;

  std::string to_tsv() const;
  static PLHomeo from_tsv(std::string_view text);

  friend bool operator==(const PLHomeo& a, const PLHomeo& b) {
    return a.xs_ == b.xs_ && a.ys_ == b.ys_;
  }

 private:
  std::vector<Rational> xs_, ys_;
};

/// f∘g on g⁻¹(dom f ∩ range g). Throws std::invalid_argument when that set
/// has empty interior.
PLHomeo pl_compose(const PLHomeo& f, const PLHomeo& g);
PLHomeo pl_invert(const PLHomeo& f);
/// f^k for k ≥ 0 (identity on dom f for k = 0); negative k uses the inverse.
PLHomeo pl_power(const PLHomeo& f, long k);
/// x ↦ −f(−x).
PLHomeo pl_reflect(const PLHomeo& f);

struct FixedComponent {
  Rational lo, hi;  // lo == hi for an isolated fixed point
  bool is_point() const { return lo == hi; }
};

/// Maximal components of {x : f(x) = x}, in increasing order.
std::vector<FixedComponent> fixed_intervals(const PLHomeo& f);

}  // namespace ivdiff::dynamics
