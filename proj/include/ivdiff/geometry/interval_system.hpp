#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <shared_mutex>
#include <span>
#include <utility>

#include "ivdiff/geometry/params.hpp"
#include "ivdiff/geometry/series.hpp"
#include "ivdiff/group/word.hpp"

namespace ivdiff::geometry {

/// (l1, ..., ln); the empty index is the ambient interval [0, T].
using IntervalIndex = group::IntegerPrefix;

class DepthOutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// The nested system I_{l1..ln} = [a, b] with J_{l1..ln} = [c, b] at its
/// right end and the children I_{l1..ln,l} filling [a, c] in increasing l.
///
/// Offsets are measured from the left end of the parent piece, so deep
/// pieces keep full relative precision even when they are far below one ulp
/// of the ambient coordinate.
class IntervalSystem {
 public:
  explicit IntervalSystem(GeometryParams params);

  const GeometryParams& params() const { return params_; }
  int n_max() const { return params_.n_max(); }

  /// Deepest level with defined I lengths (navas: len(k); affine: n_max).
  int length_depth() const { return length_depth_; }
  /// J_{idx} exists for 1 <= depth < length_depth().
  bool has_gap(std::size_t depth) const {
    return depth >= 1 && depth < static_cast<std::size_t>(length_depth_);
  }

  /// T = |I_()|.
  Certified total_length() const { return total_; }
  Certified length_I(std::span<const std::int64_t> idx) const;
  Certified length_J(std::span<const std::int64_t> idx) const;
  /// sum over l of |I_{idx,l}|, i.e. c_idx - a_idx.
  Certified children_sum(std::span<const std::int64_t> idx) const;
  /// a_{idx,l} - a_idx = sum over j < l of |I_{idx,j}|.
  Certified child_offset(std::span<const std::int64_t> parent, std::int64_t l) const;

  struct Endpoints {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;  ///< left end of J; equals b when the gap is undefined
    double err = 0.0;
    bool has_gap = false;
  };
  /// Absolute endpoints in [0, T].
  Endpoints endpoints(std::span<const std::int64_t> idx) const;

 private:
  void check_depth(std::size_t depth, std::size_t limit, const char* what) const;
  Certified navas_children_sum(std::size_t depth, std::int64_t abs_sum) const;

  GeometryParams params_;
  int length_depth_ = 0;
  Certified total_;

  mutable std::shared_mutex cache_mutex_;
  mutable std::map<std::pair<std::size_t, std::int64_t>, Certified> children_cache_;
};

std::string format_index(std::span<const std::int64_t> idx);
/// Inverse of format_index: "(1,-2)" or "()".
IntervalIndex parse_index(const std::string& text);

/// TSV with header idx, a, b, c, lenI, lenJ, err.
void write_interval_tsv(std::ostream& out, const IntervalSystem& sys,
                        std::span<const IntervalIndex> indices);

}  // namespace ivdiff::geometry
