#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ivdiff::group {

/// G is the first Grigorchuk group on binary sequences; H is the
/// Grigorchuk-Machi group on integer sequences.
enum class GroupTag { G, H };

std::string_view to_string(GroupTag tag);
GroupTag parse_group_tag(std::string_view text);

enum class Letter : std::uint8_t { a, b, c, d };

struct SignedGenerator {
  Letter letter = Letter::a;
  bool inverse = false;

  friend bool operator==(const SignedGenerator&, const SignedGenerator&) = default;
};

/// The eight signed generators a, A, b, B, c, C, d, D (uppercase = inverse).
const std::array<SignedGenerator, 8>& signed_generators();

char to_char(SignedGenerator g);

/// Finite word over the signed generators. The leftmost letter is applied
/// last: w = x1 x2 ... xk acts as x1(x2(...xk(s))).
class Word {
 public:
  Word() = default;
  Word(GroupTag tag, std::vector<SignedGenerator> letters)
      : tag_(tag), letters_(std::move(letters)) {}

  /// Parses "abAB"-style text; uppercase letters are inverses. Whitespace is
  /// ignored. Throws std::invalid_argument on any other character.
  static Word parse(GroupTag tag, std::string_view text);

  GroupTag group() const { return tag_; }
  const std::vector<SignedGenerator>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const;
  Word operator*(const Word& rhs) const;  ///< concatenation, rhs applied first
  Word power(unsigned exponent) const;

  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  GroupTag tag_ = GroupTag::H;
  std::vector<SignedGenerator> letters_;
};

/// Finite truncation (l1, ..., ln) of a sequence in Z^N (bits for G).
using IntegerPrefix = std::vector<std::int64_t>;

/// Direct evaluation of the recursive generator definitions on a prefix,
/// letter by letter. This is the reference action the portrait form is
/// checked against.
IntegerPrefix act_prefix(const Word& w, const IntegerPrefix& s);

}  // namespace ivdiff::group
