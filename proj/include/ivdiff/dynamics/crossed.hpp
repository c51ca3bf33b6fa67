#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "ivdiff/dynamics/pl.hpp"

namespace ivdiff::dynamics {

enum class Role { f, g };
enum class Side { left, right };

std::string to_string(Role r);
std::string to_string(Side s);

struct CrossWitness {
  Rational u, v;
  Role fixer;
  Role mover;
  Side side;  // left: mover(u) ∈ (u,v); right: mover(v) ∈ (u,v)
};

/// Gaps of f first, then of g, each left to right.
std::optional<CrossWitness> detect_crossed(const PLHomeo& f, const PLHomeo& g);

/// Empty string when valid, otherwise the reason.
std::string witness_problem(const PLHomeo& f, const PLHomeo& g, const CrossWitness& w);

struct Interval {
  Rational lo, hi;
};

struct PingPongCert {
  CrossWitness witness;
  bool fixer_inverted = false;  // the contracting power of the fixer was its inverse
  bool reflected = false;       // the construction ran in x ↦ −x coordinates
  long m = 0, n = 0;
  PLHomeo h1, h2;  // h1 = F^m, h2 = G∘F^n, F and G the (possibly inverted) fixer and mover
  Interval X, X1, X2;
  bool verified = false;
};

class SearchCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws std::invalid_argument on an invalid witness and SearchCapExceeded
/// when no exponent is found within `cap`.
PingPongCert pingpong_certificate(const PLHomeo& f, const PLHomeo& g, const CrossWitness& w, long cap = 256);

/// Recomputes h1(X), h2(X) from the stored generators and intervals:
/// h_i(X) ⊆ X_i ⊆ X and X1 ∩ X2 = ∅.
bool verify_pingpong(const PingPongCert& c);

std::string witness_to_json(const CrossWitness& w);
std::string certificate_to_json(const PingPongCert& c);

}  // namespace ivdiff::dynamics
