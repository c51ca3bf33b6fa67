#include "ivdiff/dynamics/measure.hpp"

#include <algorithm>
#include <json.hpp>
#include <stdexcept>

namespace ivdiff::dynamics {

void AtomicMeasure::validate() const {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].second <= 0) throw std::invalid_argument("atom masses must be positive");
    if (i > 0 && !(atoms[i - 1].first < atoms[i].first))
      throw std::invalid_argument("atom positions must be strictly increasing");
  }
  if (window && !(window->first < window->second)) throw std::invalid_argument("empty measure window");
  if (window)
    for (const auto& a : atoms)
      if (a.first < window->first || a.first > window->second)
        throw std::invalid_argument("atom outside the measure window");
}

Rational AtomicMeasure::mass(const Rational& lo, const Rational& hi) const {
  Rational total = 0;
  for (const auto& [p, m] : atoms)
    if (p >= lo && p < hi) total += m;
  return total;
}

namespace {

Rational rational_from(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  throw std::invalid_argument("measure entries must be integers or \"p/q\" strings");
}

}  // namespace

AtomicMeasure AtomicMeasure::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("measure JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array())
    throw std::invalid_argument("measure JSON needs an \"atoms\" array");
  AtomicMeasure mu;
  for (const auto& a : j["atoms"]) {
    if (!a.is_array() || a.size() != 2) throw std::invalid_argument("each atom is [position, mass]");
    mu.atoms.emplace_back(rational_from(a[0]), rational_from(a[1]));
  }
  if (j.contains("window")) {
    const auto& w = j["window"];
    if (!w.is_array() || w.size() != 2) throw std::invalid_argument("window is [lo, hi]");
    mu.window = std::make_pair(rational_from(w[0]), rational_from(w[1]));
  }
  mu.validate();
  return mu;
}

std::string AtomicMeasure::to_json() const {
  nlohmann::json j;
  j["atoms"] = nlohmann::json::array();
  for (const auto& [p, m] : atoms) j["atoms"].push_back({format_rational(p), format_rational(m)});
  if (window) j["window"] = {format_rational(window->first), format_rational(window->second)};
  return j.dump(2);
}

std::string invariance_problem(const AtomicMeasure& mu, const PLHomeo& g) {
  auto within = [&](const Rational& x) { return !mu.window || (x >= mu.window->first && x <= mu.window->second); };
  auto find = [&](const Rational& x) {
    return std::lower_bound(mu.atoms.begin(), mu.atoms.end(), x,
                            [](const auto& a, const Rational& y) { return a.first < y; });
  };
  for (const auto& [p, m] : mu.atoms) {
    if (g.in_domain(p)) {
      Rational q = g(p);
      if (within(q)) {
        auto it = find(q);
        if (it == mu.atoms.end() || it->first != q) return "atom " + format_rational(p) + " is sent off the atoms";
        if (it->second != m) return "atom " + format_rational(p) + " changes mass";
      }
    }
    if (g.in_range(p)) {
      Rational q = g.preimage(p);
      if (within(q)) {
        auto it = find(q);
        if (it == mu.atoms.end() || it->first != q) return "atom " + format_rational(p) + " has a non-atom preimage";
      }
    }
  }
  return {};
}

TranslationNumber translation_number(const AtomicMeasure& mu, const PLHomeo& g, const Rational& x0) {
  if (!g.in_domain(x0)) throw std::domain_error("x0 outside the domain of g");
  Rational y = g(x0);
  if (mu.window) {
    const auto& [lo, hi] = *mu.window;
    if (std::min(x0, y) < lo || std::max(x0, y) > hi)
      throw std::domain_error("[x0, g(x0)) leaves the measure window");
  }
  TranslationNumber t;
  if (y > x0) t.value = mu.mass(x0, y);
  else if (y < x0) t.value = -mu.mass(y, x0);
  else t.value = 0;
  t.warning = invariance_problem(mu, g);
  t.measure_preserved = t.warning.empty();
  return t;
}

}  // namespace ivdiff::dynamics
