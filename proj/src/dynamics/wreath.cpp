#include "ivdiff/dynamics/wreath.hpp"

#include <json.hpp>
#include <map>
#include <stdexcept>

namespace ivdiff::dynamics {

WreathPair wreath_pair(const Rational& x0, const Rational& contraction) {
  if (!(x0 > 0 && x0 < 1)) throw std::invalid_argument("wreath_pair: x0 must lie in (0,1)");
  if (!(contraction > 0 && contraction < 1)) throw std::invalid_argument("wreath_pair: contraction must lie in (0,1)");
  const Rational zero = 0, one = 1;
  PLHomeo f({zero, x0, one}, {zero, contraction * x0, one});
  const Rational a = f(x0);
  const Rational mid = (a + x0) / 2;
  PLHomeo g({zero, a, mid, x0, one}, {zero, a, (mid + x0) / 2, x0, one});
  return {f, g, x0};
}

std::vector<std::string> positive_words(unsigned max_length) {
  std::vector<std::string> out, layer{""};
  for (unsigned len = 1; len <= max_length; ++len) {
    std::vector<std::string> next;
    for (const auto& w : layer)
      for (char c : {'f', 'g'}) next.push_back(w + c);
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

namespace {

const PLHomeo& letter(const WreathPair& p, char c) {
  if (c == 'f') return p.f;
  if (c == 'g') return p.g;
  throw std::invalid_argument(std::string("unknown letter '") + c + "'");
}

}  // namespace

PLHomeo word_map(const WreathPair& p, const std::string& word) {
  PLHomeo out = PLHomeo::identity(p.f.domain_lo(), p.f.domain_hi());
  for (char c : word) out = pl_compose(out, letter(p, c));
  return out;
}

Rational word_apply(const WreathPair& p, const std::string& word, Rational x) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) x = letter(p, *it)(x);
  return x;
}

Rational word_preimage(const WreathPair& p, const std::string& word, Rational y) {
  for (char c : word) y = letter(p, c).preimage(y);
  return y;
}

SeparationReport wreath_separation(const WreathPair& p, unsigned max_length, long cap) {
  SeparationReport r;
  r.max_length = max_length;
  r.u = (p.f(p.x0) + p.x0) / 2;
  r.v = (r.u + p.g(r.u)) / 2;

  Rational a = r.u, b = r.v;
  for (long m = 0; m <= cap; ++m, a = p.f(a), b = p.f(b)) {
    Rational ga = p.g(a), gb = p.g(b);
    if (ga >= b || gb <= a) r.N.push_back(m);
    else if (ga != a || gb != b) r.hypothesis_ok = false;
  }
  if (r.N.empty()) throw std::runtime_error("wreath_separation: N is empty");
  r.m = r.N.back();
  const Rational t = word_apply(p, std::string(static_cast<std::size_t>(r.m), 'f'), r.u);

  auto words = positive_words(max_length);
  r.words = words.size();
  std::vector<PLHomeo> maps;
  maps.reserve(words.size());
  for (const auto& w : words) maps.push_back(word_map(p, w));

  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      const auto& w1 = words[i];
      const auto& w2 = words[j];
      std::size_t k = 0;
      while (k < w1.size() && k < w2.size() && w1[w1.size() - 1 - k] == w2[w2.size() - 1 - k]) ++k;
      const Rational x = word_preimage(p, w1.substr(w1.size() - k), t);
      ++r.pairs;
      bool point = word_apply(p, w1, x) != word_apply(p, w2, x);
      bool structural = !(maps[i] == maps[j]);
      r.separated_at_point += point;
      r.separated_structurally += structural;
      if ((!point || !structural) && r.failures.size() < 16) r.failures.emplace_back(w1, w2);
    }
  return r;
}

std::string SeparationReport::to_json() const {
  nlohmann::json j{{"max_length", max_length},
                   {"words", words},
                   {"pairs", pairs},
                   {"separated_at_point", separated_at_point},
                   {"separated_structurally", separated_structurally},
                   {"u", format_rational(u)},
                   {"v", format_rational(v)},
                   {"N", N},
                   {"m", m},
                   {"hypothesis_ok", hypothesis_ok},
                   {"all_separated", all_separated()}};
  j["failures"] = nlohmann::json::array();
  for (const auto& [a, b] : failures) j["failures"].push_back({a, b});
  return j.dump(2);
}

}  // namespace ivdiff::dynamics
