#pragma once

#include <string>
#include <vector>

#include "ivdiff/dynamics/pl.hpp"

namespace ivdiff::dynamics {

struct WreathPair {
  PLHomeo f, g;
  Rational x0;
};

/// f: knots (0,0), (x0, c·x0), (1,1), so f < id on (0,1).
/// g: bump supported on [f(x0), x0], g > id inside.
WreathPair wreath_pair(const Rational& x0, const Rational& contraction);

/// Positive words over {f, g}; the rightmost letter acts first.
std::vector<std::string> positive_words(unsigned max_length);
PLHomeo word_map(const WreathPair& p, const std::string& word);
Rational word_apply(const WreathPair& p, const std::string& word, Rational x);
Rational word_preimage(const WreathPair& p, const std::string& word, Rational y);

struct SeparationReport {
  unsigned max_length = 0;
  std::size_t words = 0, pairs = 0;
  std::size_t separated_at_point = 0;       // W1(x) ≠ W2(x) at the test point
  std::size_t separated_structurally = 0;   // canonical PL data differ
  Rational u, v;
  std::vector<long> N;  // m ≤ cap with g f^m(]u,v[) ∩ f^m(]u,v[) = ∅
  bool hypothesis_ok = true;  // for m ≤ cap, those images are disjoint or equal
  long m = 0;                 // max N
  std::vector<std::pair<std::string, std::string>> failures;  // first few

  bool all_separated() const { return separated_at_point == pairs && separated_structurally == pairs; }
  std::string to_json() const;
};

/// For each pair W1 ≠ W2: strip the longest common right factor S and
/// compare W1, W2 at S⁻¹(f^m(u)).
SeparationReport wreath_separation(const WreathPair& p, unsigned max_length, long cap = 64);

}  // namespace ivdiff::dynamics
