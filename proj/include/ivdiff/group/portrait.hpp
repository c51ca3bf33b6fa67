#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ivdiff/group/word.hpp"

namespace ivdiff::group {

class DepthMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Canonical form of an element of H/H_n (or G/G_n): a root offset m acting
/// on the first coordinate by l -> l + m, plus two sections of depth n - 1
/// chosen by the parity of that coordinate. Structural equality is equality
/// in the level-n quotient.
///
/// Nodes are stored in preorder (node, even subtree, odd subtree), so a
/// depth-n portrait holds 2^n - 1 offsets and every section is a contiguous
/// slice. For G offsets are kept in {0, 1}.
class Portrait {
 public:
  using Offset = std::int64_t;

  /// Flat storage grows as 2^depth.
  static constexpr int max_depth = 22;

  Portrait() = default;

  static Portrait identity(GroupTag tag, int depth);
  static Portrait node(Offset offset, const Portrait& even, const Portrait& odd);
  /// Builds from preorder offsets; validates the size and (for G) the range.
  static Portrait from_nodes(GroupTag tag, int depth, std::vector<Offset> nodes);

  GroupTag group() const { return tag_; }
  int depth() const { return depth_; }
  /// Root offset; 0 for the depth-0 leaf.
  Offset offset() const { return nodes_.empty() ? 0 : nodes_.front(); }
  /// Section on the even (parity 0) or odd (parity 1) branch.
  Portrait child(int parity) const;
  bool is_identity() const;
  /// Restriction to the first `depth` levels (the image in a coarser quotient).
  Portrait truncate(int depth) const;

  std::span<const Offset> nodes() const { return nodes_; }
  std::size_t hash() const;

  friend bool operator==(const Portrait&, const Portrait&) = default;

 private:
  Portrait(GroupTag tag, int depth, std::vector<Offset> nodes)
      : tag_(tag), depth_(depth), nodes_(std::move(nodes)) {}

  friend Portrait generator_portrait(SignedGenerator, int, GroupTag);
  friend Portrait compose(const Portrait&, const Portrait&);
  friend Portrait invert(const Portrait&);

  GroupTag tag_ = GroupTag::H;
  int depth_ = 0;
  std::vector<Offset> nodes_;
};

struct PortraitHash {
  std::size_t operator()(const Portrait& p) const { return p.hash(); }
};

Portrait generator_portrait(SignedGenerator g, int depth, GroupTag tag);

/// Product with q applied first: act(compose(p, q), s) = act(p, act(q, s)).
/// Throws DepthMismatch when depths or groups differ.
Portrait compose(const Portrait& p, const Portrait& q);

Portrait invert(const Portrait& p);

Portrait word_to_portrait(const Word& w, int depth);

/// Action on a prefix of length at most p.depth().
IntegerPrefix act_prefix(const Portrait& p, const IntegerPrefix& s);

/// Equality of the images of w1 and w2 in the level-n quotient.
bool equal_at_level(const Word& w1, const Word& w2, int depth);

/// Least t >= 1 with w^t trivial at level n, or nullopt when no such t <= cap
/// exists. Power-of-two orders are found by repeated squaring; other orders
/// by a linear scan up to the cap.
std::optional<std::uint64_t> order_at_level(const Word& w, int depth, std::uint64_t cap);

}  // namespace ivdiff::group
