#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ivdiff/action/embedding.hpp"

namespace ivdiff::cli {

enum ExitCode : int { ok = 0, failure = 1, usage = 2 };

/// Settings shared by the embed subcommands.
struct CommandConfig {
  action::ActionConfig action;
  double tol = 1e-12;
  std::uint64_t seed = 0;
  int threads = 1;
  double M = 1.0;
};

/// JSON config:
///   {"family": "yoccoz"|"affine", "geometry": {...params JSON...},
///    "depth": n, "normalization": "none"|"rescale_to_unit",
///    "M": m, "seed": s, "tol": t, "threads": k}
/// Every key is optional. Without "geometry" the k_n come from kn_plan(M, depth).
/// Depth defaults to min(3, n_max). Throws std::invalid_argument on malformed
/// JSON or a constraint violation, std::runtime_error if the file is unreadable.
CommandConfig parse_config(const std::string& path);
CommandConfig parse_config_text(const std::string& text);

/// Planned geometry for M at the given depth.
CommandConfig planned_config(double M, int depth);

/// argv[0] is the program name. Exit codes: 0 success, 1 the command ran but
/// its result is negative (no witness, failed separation, ...) or I/O
/// failed, 2 usage or validation error.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace ivdiff::cli
