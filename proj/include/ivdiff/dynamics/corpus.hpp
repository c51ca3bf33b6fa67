#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ivdiff/dynamics/crossed.hpp"
#include "ivdiff/dynamics/measure.hpp"

namespace ivdiff::dynamics {

struct CrossedCase {
  std::string name;
  PLHomeo f, g;
  std::optional<CrossWitness> expected;
};

/// The documented three cases: g = id; shared fixed set; crossed at (1/4, 3/4).
std::vector<CrossedCase> crossed_corpus();

/// Periodic integer atoms on a window, and two maps that translate the atoms
/// by multiples of the period with random rational knots in between.
struct PreservingPair {
  AtomicMeasure mu;
  PLHomeo g, h;
  Rational x0;
};

PreservingPair random_preserving_pair(std::mt19937_64& rng);

}  // namespace ivdiff::dynamics
