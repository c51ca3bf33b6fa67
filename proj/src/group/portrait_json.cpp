#include "ivdiff/group/portrait_json.hpp"

#include <json.hpp>

namespace ivdiff::group {

using nlohmann::json;

namespace {

json encode(std::span<const Portrait::Offset> nodes) {
  if (nodes.empty()) return json{{"m", 0}, {"e", nullptr}, {"o", nullptr}};
  const std::size_t half = (nodes.size() - 1) / 2;
  return json{{"m", nodes[0]}, {"e", encode(nodes.subspan(1, half))}, {"o", encode(nodes.subspan(1 + half, half))}};
}

int depth_of(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("portrait node must be an object");
  if (j.at("e").is_null()) return 0;
  return 1 + depth_of(j.at("e"));
}

void decode(const json& j, int depth, std::vector<Portrait::Offset>& out) {
  if (!j.is_object()) throw std::invalid_argument("portrait node must be an object");
  if (depth == 0) {
    if (!j.at("e").is_null() || !j.at("o").is_null() || j.at("m").get<Portrait::Offset>() != 0)
      throw std::invalid_argument("portrait children have unequal depths");
    return;
  }
  if (j.at("e").is_null() || j.at("o").is_null())
    throw std::invalid_argument("portrait children have unequal depths");
  out.push_back(j.at("m").get<Portrait::Offset>());
  decode(j.at("e"), depth - 1, out);
  decode(j.at("o"), depth - 1, out);
}

}  // namespace

std::string portrait_to_json(const Portrait& p) { return encode(p.nodes()).dump(); }

Portrait portrait_from_json(const std::string& text, GroupTag tag) {
  try {
    const json j = json::parse(text);
    const int depth = depth_of(j);
    std::vector<Portrait::Offset> nodes;
    decode(j, depth, nodes);
    return Portrait::from_nodes(tag, depth, std::move(nodes));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed portrait JSON: ") + e.what());
  }
}

}  // namespace ivdiff::group
