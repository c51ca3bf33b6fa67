#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "ivdiff/geometry/family.hpp"
#include "ivdiff/geometry/interval_system.hpp"
#include "ivdiff/group/portrait.hpp"

namespace ivdiff::action {

using geometry::IntervalIndex;

enum class Normalization { none, rescale_to_unit };

struct ActionConfig {
  geometry::Family family = geometry::Family::yoccoz;
  geometry::GeometryParams geometry;
  int depth = 1;
  /// rescale_to_unit conjugates by g(x) = T x, so coordinates live in [0, 1].
  Normalization normalization = Normalization::none;

  /// Throws std::invalid_argument unless 1 <= depth <= geometry.n_max().
  void validate() const;
};

enum class PieceKind { I_leaf, J_gap, residual };
std::string_view to_string(PieceKind k);

struct PieceLocator {
  PieceKind kind = PieceKind::I_leaf;
  IntervalIndex index;
  friend bool operator==(const PieceLocator&, const PieceLocator&) = default;
};

/// A point of [0, T] in piece coordinates.
///   I_leaf: local = offset from a_index, index of depth n.
///   J_gap:  local = offset from c_index, index of depth 1..n-1.
///   residual: the limit point a_index of a piece with children (local 0),
///             or the right end T of the ambient interval (empty index,
///             local = T).
/// err bounds the uncertainty of local inherited from locating.
struct PiecePoint {
  PieceLocator piece;
  double local = 0.0;
  double err = 0.0;
};

class ResidualPoint : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Jet {
  PiecePoint point;
  double derivative = 1.0;
};

/// The level-n maps A_n, B_n, C_n, D_n and their words, evaluated on a frozen
/// interval system. Thread-safe.
class Embedding {
 public:
  explicit Embedding(ActionConfig cfg);

  const ActionConfig& config() const { return cfg_; }
  const geometry::IntervalSystem& system() const { return sys_; }
  int depth() const { return cfg_.depth; }
  /// T in raw coordinates.
  double total_length() const { return sys_.total_length().value; }
  /// Length of the ambient interval in the configured coordinates.
  double ambient_length() const;

  const group::Portrait& generator(group::SignedGenerator g) const;
  group::Portrait portrait(const group::Word& w) const { return group::word_to_portrait(w, cfg_.depth); }

  /// Length of the piece; 0 for residual points.
  double piece_length(const PieceLocator& p) const;

  /// Descends the nested system from x (configured coordinates). Boundary
  /// points go to the piece on their right; a point that cannot be separated
  /// from an accumulation point of smaller pieces comes back as residual.
  /// Throws std::out_of_range outside the ambient interval.
  PiecePoint locate(double x) const;

  /// Descent from a point given by its offset y (error e) inside the piece
  /// I_start, whose depth must be below n.
  PiecePoint descend(IntervalIndex start, double y, double e) const;

  /// Offset of p from the left end of its ancestor of the given depth.
  geometry::Certified offset_in(const PiecePoint& p, std::size_t ancestor_depth) const;

  /// The point at distance h > 0 to the right of p, located by moving up to
  /// the nearest ancestor that contains it. nullopt past the ambient end.
  std::optional<PiecePoint> advance(const PiecePoint& p, double h) const;

  /// Absolute coordinate (configured coordinates).
  double coordinate(const PiecePoint& p) const;

  /// One equivariant jump: the piece index moves by the portrait action and
  /// the point is carried by phi(source piece, target piece).
  Jet apply(const group::Portrait& p, const PiecePoint& x) const;
  Jet apply_word(const group::Word& w, const PiecePoint& x) const { return apply(portrait(w), x); }
  /// Generator by generator, right to left, with the chain rule.
  Jet apply_letters(const group::Word& w, const PiecePoint& x) const;
  /// Same as apply but with a precomputed target index.
  Jet carry(const PiecePoint& x, IntervalIndex target) const;

  double eval(const group::Word& w, double x) const;
  /// Throws ResidualPoint on the residual set.
  double derivative(const group::Word& w, double x) const;

 private:
  ActionConfig cfg_;
  geometry::IntervalSystem sys_;
  std::array<group::Portrait, 8> generators_;
};

/// The case-by-case level-n definitions: A_n shifts l1; B_n, C_n, D_n follow
/// the phi0/phi1 chain (phi0: b,c -> a, d -> id; phi1: b -> c -> d -> b) and
/// shift l_i at the first step i where the chain has reached a. Once the
/// chain reaches id the map is the identity. Independent of portraits.
IntervalIndex literal_target(group::SignedGenerator g, const PieceLocator& piece);
Jet literal_apply(const Embedding& emb, group::SignedGenerator g, const PiecePoint& x);

/// TSV "x\tf(x)\tdf(x)" on `resolution` + 1 equally spaced points of the
/// ambient interval. At residual points the derivative column carries the
/// limit value 1.
void write_plot_tsv(std::ostream& out, const Embedding& emb, const group::Word& w, std::size_t resolution);

}  // namespace ivdiff::action
