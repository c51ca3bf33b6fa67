#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ivdiff/action/embedding.hpp"
#include "ivdiff/geometry/modulus.hpp"

namespace ivdiff::action {

/// Random points inside I_root, generated piece first: a leaf or a gap, a
/// random index below root, then an offset that is uniform or clustered at
/// an end of the piece. Length-uniform sampling would almost never leave the
/// depth-1 gaps, which fill nearly all of [0, T].
class PointSampler {
 public:
  PointSampler(const Embedding& emb, IntervalIndex root = {});
  PiecePoint operator()(std::mt19937_64& rng) const;
  const IntervalIndex& root() const { return root_; }

 private:
  const Embedding& emb_;
  IntervalIndex root_;
};

std::int64_t random_index_entry(std::mt19937_64& rng);
group::Word random_word(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len);

struct NormEstimate {
  double norm = 0.0;           ///< max |f'(x) - f'(y)| / sigma(|x - y|)
  double rescaled_norm = 0.0;  ///< same pairs after conjugating by x -> T x
  std::size_t pairs = 0;
  std::size_t skipped = 0;     ///< cross-piece pairs leaving the sampled range
};

/// Sampled sigma-norm of the derivative of w, a lower bound of the true
/// norm. Each round draws a point x and pairs it with: a point of the same
/// piece at a log-uniform relative scale, both piece endpoints (where the
/// derivative is 1), and the point at a log-uniform distance to the right
/// found by advance(). Deterministic for a given seed whatever the thread
/// count.
NormEstimate sample_norm(const Embedding& emb, const group::Word& w, const geometry::Modulus& sigma,
                         std::size_t rounds, std::uint64_t seed, int threads, IntervalIndex root = {});

struct VerifyOptions {
  std::vector<std::string> checks{"homomorphism", "tangency", "sigma_norm", "holder_diag", "cagoncito"};
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  double M = 1.0;
  geometry::Modulus sigma = geometry::Modulus::navas_log();
  double alpha = 0.5;
  int threads = 1;
  std::size_t max_word_length = 6;
};

struct GeneratorNorm {
  std::string generator;
  NormEstimate estimate;
};

struct HolderLevel {
  int level = 0;
  std::string generator;
  NormEstimate estimate;
};

struct VerifyReport {
  int depth = 0;
  std::string family;
  std::string geometry;
  double M = 0.0;
  std::string sigma;
  std::uint64_t seed = 0;

  bool ran_homomorphism = false;
  double homomorphism_residual = 0.0;           ///< max absolute difference
  double homomorphism_relative = 0.0;           ///< divided by the target piece length
  std::size_t homomorphism_samples = 0;
  std::size_t homomorphism_index_mismatches = 0;

  bool ran_tangency = false;
  double tangency_max_deviation = 0.0;  ///< max |f' - 1| at and next to piece endpoints
  std::size_t tangency_samples = 0;

  bool ran_sigma_norm = false;
  std::vector<GeneratorNorm> sigma_norms;  ///< all eight signed generators
  double sigma_norm_max = 0.0;             ///< over a, b, c, d

  bool ran_holder = false;
  double alpha = 0.0;
  std::vector<HolderLevel> holder;  ///< B_n' for n = 1..depth

  bool ran_cagoncito = false;
  std::size_t cagoncito_samples = 0;
  std::size_t cagoncito_violations = 0;
  double cagoncito_worst_ratio = 0.0;  ///< max |h(x) - x| / (M_est |I|^(1+alpha))

  std::string to_json() const;
};

/// Throws std::invalid_argument on an unknown check name.
VerifyReport verify_suite(const ActionConfig& cfg, const VerifyOptions& opt);

}  // namespace ivdiff::action
