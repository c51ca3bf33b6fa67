#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace ivdiff::geometry {

/// |I_{l1..ln}| = (|l1| + ... + |ln| + k_n)^(-2n); J lengths by difference.
struct NavasParams {
  std::vector<std::int64_t> k;
  int n_max = 0;
};

/// Lengths l_i = q r^|i| with q = (1 - r)/(1 + r); all J gaps are empty.
struct AffineParams {
  std::int64_t ratio_num = 1;
  std::int64_t ratio_den = 2;
  int n_max = 12;
  double ratio() const { return static_cast<double>(ratio_num) / static_cast<double>(ratio_den); }
};

struct GeometryParams {
  std::variant<NavasParams, AffineParams> variant;
  double tol = 1e-12;

  static GeometryParams navas(std::vector<std::int64_t> k, int n_max, double tol = 1e-12);
  static GeometryParams affine(std::int64_t num, std::int64_t den, int n_max = 12);

  bool is_navas() const { return std::holds_alternative<NavasParams>(variant); }
  int n_max() const;

  /// Throws std::invalid_argument: k empty, k1 < 4, k not strictly
  /// increasing, n_max outside [1, k.size()], ratio outside (0, 1), tol <= 0.
  void validate() const;

  /// {"variant":"navas","k":[...],"n_max":N,"tol":t} or
  /// {"variant":"affine","ratio":"p/q"}. Parsing validates; missing tol
  /// defaults to 1e-12, missing n_max to k.size() (navas) or 12 (affine).
  std::string to_json() const;
  static GeometryParams from_json(const std::string& text);
};

}  // namespace ivdiff::geometry
