#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "ivdiff/cli/cli.hpp"
#include "ivdiff/geometry/kn_plan.hpp"

namespace ivdiff::cli {

CommandConfig planned_config(double M, int depth) {
  if (depth < 1 || depth > 12) throw std::invalid_argument("depth must lie in [1, 12]");
  if (!(M > 0)) throw std::invalid_argument("M must be positive");
  CommandConfig c;
  c.M = M;
  c.action.geometry = geometry::GeometryParams::navas(geometry::kn_plan(M, depth).k, depth);
  c.action.depth = depth;
  c.action.validate();
  return c;
}

CommandConfig parse_config_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("config: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  static const std::vector<std::string> known{"family", "geometry", "depth", "normalization",
                                              "M",      "seed",     "tol",   "threads"};
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw std::invalid_argument("config: unknown key \"" + key + "\"");

  try {
    CommandConfig c;
    c.M = j.value("M", 1.0);
    c.seed = j.value("seed", std::uint64_t{0});
    c.tol = j.value("tol", 1e-12);
    c.threads = j.value("threads", 1);
    if (!(c.tol > 0)) throw std::invalid_argument("config: tol must be positive");
    if (c.threads < 1) throw std::invalid_argument("config: threads must be >= 1");
    if (j.contains("geometry")) {
      nlohmann::json g = j["geometry"];
      if (!g.contains("tol")) g["tol"] = c.tol;
      c.action.geometry = geometry::GeometryParams::from_json(g.dump());
      c.action.depth = j.value("depth", std::min(3, c.action.geometry.n_max()));
    } else {
      const int depth = j.value("depth", 3);
      CommandConfig p = planned_config(c.M, depth);
      c.action.geometry = p.action.geometry;
      c.action.depth = depth;
    }
    c.action.geometry.tol = c.tol;
    if (j.contains("family")) c.action.family = geometry::parse_family(j["family"].get<std::string>());
    const std::string norm = j.value("normalization", std::string("none"));
    if (norm == "none") c.action.normalization = action::Normalization::none;
    else if (norm == "rescale_to_unit") c.action.normalization = action::Normalization::rescale_to_unit;
    else throw std::invalid_argument("config: unknown normalization \"" + norm + "\"");
    c.action.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
}

CommandConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return parse_config_text(s.str());
}

}  // namespace ivdiff::cli
