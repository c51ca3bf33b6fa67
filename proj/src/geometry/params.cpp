#include "ivdiff/geometry/params.hpp"

#include <json.hpp>
#include <stdexcept>

namespace ivdiff::geometry {

using nlohmann::json;

GeometryParams GeometryParams::navas(std::vector<std::int64_t> k, int n_max, double tol) {
  GeometryParams p;
  p.variant = NavasParams{std::move(k), n_max};
  p.tol = tol;
  p.validate();
  return p;
}

GeometryParams GeometryParams::affine(std::int64_t num, std::int64_t den, int n_max) {
  GeometryParams p;
  p.variant = AffineParams{num, den, n_max};
  p.validate();
  return p;
}

int GeometryParams::n_max() const {
  return std::visit([](const auto& v) { return v.n_max; }, variant);
}

void GeometryParams::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (const auto* nv = std::get_if<NavasParams>(&variant)) {
    if (nv->k.empty()) throw std::invalid_argument("k must be non-empty");
    if (nv->k.front() < 4) throw std::invalid_argument("k1 must be >= 4");
    for (std::size_t i = 1; i < nv->k.size(); ++i)
      if (nv->k[i] <= nv->k[i - 1]) throw std::invalid_argument("k must be strictly increasing");
    if (nv->k.back() > (std::int64_t{1} << 52)) throw std::invalid_argument("k entries too large");
    if (nv->n_max < 1 || static_cast<std::size_t>(nv->n_max) > nv->k.size())
      throw std::invalid_argument("n_max must lie in [1, len(k)]");
  } else {
    const auto& av = std::get<AffineParams>(variant);
    if (av.ratio_den <= 0 || av.ratio_num <= 0 || av.ratio_num >= av.ratio_den)
      throw std::invalid_argument("ratio must lie in (0, 1)");
    if (av.n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  }
}

std::string GeometryParams::to_json() const {
  json j;
  if (const auto* nv = std::get_if<NavasParams>(&variant)) {
    j["variant"] = "navas";
    j["k"] = nv->k;
    j["n_max"] = nv->n_max;
  } else {
    const auto& av = std::get<AffineParams>(variant);
    j["variant"] = "affine";
    j["ratio"] = std::to_string(av.ratio_num) + "/" + std::to_string(av.ratio_den);
    j["n_max"] = av.n_max;
  }
  j["tol"] = tol;
  return j.dump();
}

namespace {

std::pair<std::int64_t, std::int64_t> parse_ratio(const json& r) {
  if (r.is_number()) {
    // Decimal ratios are taken as exact binary fractions of bounded size.
    const double x = r.get<double>();
    if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("ratio must lie in (0, 1)");
    std::int64_t den = std::int64_t{1} << 40;
    return {static_cast<std::int64_t>(x * static_cast<double>(den)), den};
  }
  const std::string s = r.get<std::string>();
  const auto slash = s.find('/');
  std::size_t used = 0;
  if (slash == std::string::npos) throw std::invalid_argument("ratio must be written p/q");
  const std::int64_t num = std::stoll(s.substr(0, slash), &used);
  if (used != slash) throw std::invalid_argument("malformed ratio");
  const std::string den_text = s.substr(slash + 1);
  const std::int64_t den = std::stoll(den_text, &used);
  if (used != den_text.size()) throw std::invalid_argument("malformed ratio");
  return {num, den};
}

}  // namespace

GeometryParams GeometryParams::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed geometry JSON: ") + e.what());
  }
  try {
    GeometryParams p;
    p.tol = j.value("tol", 1e-12);
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "navas") {
      NavasParams nv;
      nv.k = j.at("k").get<std::vector<std::int64_t>>();
      nv.n_max = j.value("n_max", static_cast<int>(nv.k.size()));
      p.variant = std::move(nv);
    } else if (variant == "affine") {
      const auto [num, den] = parse_ratio(j.at("ratio"));
      p.variant = AffineParams{num, den, j.value("n_max", 12)};
    } else {
      throw std::invalid_argument("unknown geometry variant '" + variant + "'");
    }
    p.validate();
    return p;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad geometry JSON: ") + e.what());
  }
}

}  // namespace ivdiff::geometry
