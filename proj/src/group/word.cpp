#include "ivdiff/group/word.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace ivdiff::group {

std::string_view to_string(GroupTag tag) { return tag == GroupTag::G ? "G" : "H"; }

GroupTag parse_group_tag(std::string_view text) {
  if (text == "G" || text == "g") return GroupTag::G;
  if (text == "H" || text == "h") return GroupTag::H;
  throw std::invalid_argument("unknown group '" + std::string(text) + "' (expected G or H)");
}

const std::array<SignedGenerator, 8>& signed_generators() {
  static const std::array<SignedGenerator, 8> gens{{
      {Letter::a, false}, {Letter::a, true}, {Letter::b, false}, {Letter::b, true},
      {Letter::c, false}, {Letter::c, true}, {Letter::d, false}, {Letter::d, true},
  }};
  return gens;
}

char to_char(SignedGenerator g) {
  const char base = static_cast<char>('a' + static_cast<int>(g.letter));
  return g.inverse ? static_cast<char>(std::toupper(base)) : base;
}

Word Word::parse(GroupTag tag, std::string_view text) {
  std::vector<SignedGenerator> letters;
  letters.reserve(text.size());
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (lower < 'a' || lower > 'd')
      throw std::invalid_argument(std::string("invalid letter '") + ch + "' in word");
    letters.push_back({static_cast<Letter>(lower - 'a'), ch != lower});
  }
  return Word(tag, std::move(letters));
}

Word Word::inverse() const {
  std::vector<SignedGenerator> out(letters_.rbegin(), letters_.rend());
  for (auto& g : out) g.inverse = !g.inverse;
  return Word(tag_, std::move(out));
}

Word Word::operator*(const Word& rhs) const {
  if (rhs.tag_ != tag_) throw std::invalid_argument("cannot concatenate words of different groups");
  std::vector<SignedGenerator> out = letters_;
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return Word(tag_, std::move(out));
}

Word Word::power(unsigned exponent) const {
  Word out(tag_, {});
  for (unsigned i = 0; i < exponent; ++i) out = out * *this;
  return out;
}

std::string Word::to_string() const {
  std::string s;
  s.reserve(letters_.size());
  for (auto g : letters_) s.push_back(to_char(g));
  return s;
}

namespace {

inline bool is_even(std::int64_t x) { return (x & 1) == 0; }

// Applies one signed generator to s[pos..] in place.
void apply_h(SignedGenerator g, IntegerPrefix& s, std::size_t pos) {
  while (pos < s.size()) {
    const std::int64_t l = s[pos];
    switch (g.letter) {
      case Letter::a:
        s[pos] += g.inverse ? -1 : 1;
        return;
      case Letter::b:
        g.letter = is_even(l) ? Letter::a : Letter::c;
        break;
      case Letter::c:
        g.letter = is_even(l) ? Letter::a : Letter::d;
        break;
      case Letter::d:
        if (is_even(l)) return;
        g.letter = Letter::b;
        break;
    }
    ++pos;
  }
}

void apply_g(Letter letter, IntegerPrefix& s, std::size_t pos) {
  while (pos < s.size()) {
    const std::int64_t l = s[pos];
    switch (letter) {
      case Letter::a:
        s[pos] = 1 - l;
        return;
      case Letter::b:
        letter = l == 0 ? Letter::a : Letter::c;
        break;
      case Letter::c:
        letter = l == 0 ? Letter::a : Letter::d;
        break;
      case Letter::d:
        if (l == 0) return;
        letter = Letter::b;
        break;
    }
    ++pos;
  }
}

}  // namespace

IntegerPrefix act_prefix(const Word& w, const IntegerPrefix& s) {
  IntegerPrefix out = s;
  if (w.group() == GroupTag::G) {
    for (auto l : out)
      if (l != 0 && l != 1) throw std::invalid_argument("prefix entries for G must be bits");
  }
  const auto& letters = w.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    if (w.group() == GroupTag::H)
      apply_h(*it, out, 0);
    else
      apply_g(it->letter, out, 0);
  }
  return out;
}

}  // namespace ivdiff::group
