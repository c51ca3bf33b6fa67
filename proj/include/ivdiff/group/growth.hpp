#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ivdiff/group/portrait.hpp"

namespace ivdiff::group {

/// Ball sizes |B(r)|, r = 0..r_max, of the level-n quotient for the word
/// metric of the generator set.
struct GrowthTable {
  GroupTag group = GroupTag::H;
  int level = 0;
  std::vector<std::uint64_t> counts;  ///< counts[r] for each completed radius
  int requested_radius = 0;
  bool truncated = false;  ///< element cap reached before requested_radius

  int completed_radius() const { return static_cast<int>(counts.size()) - 1; }
};

struct BallOptions {
  std::vector<SignedGenerator> generators{signed_generators().begin(), signed_generators().end()};
  std::uint64_t element_cap = 50'000'000;
  unsigned threads = 1;
};

/// Breadth-first enumeration of the level-n quotient from the identity. The
/// frontier may be expanded on several threads; the table is identical to
/// the sequential run because counts are set cardinalities and merging is
/// done in a fixed order.
GrowthTable ball_sizes(GroupTag tag, int level, int r_max, const BallOptions& options = {});

/// CSV with header "level,r,count". Several tables may be written to one
/// stream by passing header = false after the first.
void write_growth_csv(std::ostream& out, const GrowthTable& table, bool header = true);

/// Reads every row of a growth CSV; rows are grouped by level in file order.
std::vector<GrowthTable> read_growth_csv(std::istream& in, GroupTag tag);

}  // namespace ivdiff::group
