#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ivdiff::geometry {

struct ConditionCheck {
  std::string name;  ///< perro1, perro2, tonta, dos
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// The four sufficient conditions on k_n at level n for sigma-norms <= M.
std::vector<ConditionCheck> kn_conditions(double M, int n, std::int64_t k);
bool kn_admissible(double M, int n, std::int64_t k);

struct KnPlan {
  double M = 0.0;
  std::vector<std::int64_t> k;
  std::vector<std::vector<ConditionCheck>> report;  ///< per level, at the chosen k_n
};

/// Minimal k_n >= max(4, k_{n-1} + 1) satisfying every condition, for
/// n = 1..n_max. Each condition is monotone in k, so the least admissible
/// value is found by doubling and bisection.
KnPlan kn_plan(double M, int n_max);

}  // namespace ivdiff::geometry
