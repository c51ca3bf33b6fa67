#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "ivdiff/group/growth.hpp"
#include "ivdiff/group/portrait.hpp"
#include "ivdiff/group/portrait_json.hpp"

using namespace ivdiff::group;

namespace {

using Nodes = std::vector<Portrait::Offset>;

Nodes nodes_of(const Portrait& p) { return Nodes(p.nodes().begin(), p.nodes().end()); }

Word W(const char* text, GroupTag tag = GroupTag::H) { return Word::parse(tag, text); }

Word random_word(std::mt19937_64& rng, GroupTag tag, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> pick(0, 7);
  std::vector<SignedGenerator> letters(len(rng));
  for (auto& g : letters) g = signed_generators()[pick(rng)];
  return Word(tag, std::move(letters));
}

IntegerPrefix random_prefix(std::mt19937_64& rng, GroupTag tag, std::size_t n) {
  std::uniform_int_distribution<std::int64_t> h(-9, 9);
  std::uniform_int_distribution<std::int64_t> bit(0, 1);
  IntegerPrefix s(n);
  for (auto& x : s) x = tag == GroupTag::H ? h(rng) : bit(rng);
  return s;
}

// All 2^n binary prefixes.
std::vector<IntegerPrefix> all_bit_prefixes(int n) {
  std::vector<IntegerPrefix> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    IntegerPrefix s(n);
    for (int i = 0; i < n; ++i) s[i] = (mask >> i) & 1;
    out.push_back(s);
  }
  return out;
}

// Integer prefixes covering every parity pattern with two residues per parity.
std::vector<IntegerPrefix> parity_prefixes(int n) {
  std::vector<IntegerPrefix> out;
  const std::int64_t vals[4] = {0, 1, 2, -3};
  int total = 1;
  for (int i = 0; i < n; ++i) total *= 4;
  for (int code = 0; code < total; ++code) {
    IntegerPrefix s(n);
    int c = code;
    for (int i = 0; i < n; ++i, c /= 4) s[i] = vals[c % 4];
    out.push_back(s);
  }
  return out;
}

bool same_action(const Word& w1, const Word& w2, int n) {
  const auto prefixes = w1.group() == GroupTag::G ? all_bit_prefixes(n) : parity_prefixes(n);
  for (const auto& s : prefixes)
    if (act_prefix(w1, s) != act_prefix(w2, s)) return false;
  return true;
}

}  // namespace

TEST_SUITE("group") {

TEST_CASE("word parsing and printing") {
  const Word w = W("abAB");
  CHECK(w.size() == 4);
  CHECK(w.letters()[2] == SignedGenerator{Letter::a, true});
  CHECK(w.to_string() == "abAB");
  CHECK(w.inverse().to_string() == "baBA");
  CHECK(W(" a b ").to_string() == "ab");
  CHECK_THROWS_AS(W("abx"), std::invalid_argument);
  CHECK(W("").empty());
}

TEST_CASE("generator portraits") {
  CHECK(nodes_of(generator_portrait({Letter::a, false}, 1, GroupTag::H)) == Nodes{1});
  CHECK(generator_portrait({Letter::d, false}, 2, GroupTag::H).is_identity());
  CHECK(nodes_of(generator_portrait({Letter::b, false}, 2, GroupTag::H)) == Nodes{0, 1, 0});
  CHECK(generator_portrait({Letter::a, false}, 0, GroupTag::H).nodes().empty());

  // Oracle: the portrait acts like the recursive definition on every parity
  // pattern of length 2.
  for (auto g : signed_generators()) {
    const Portrait p = generator_portrait(g, 2, GroupTag::H);
    for (const auto& s : parity_prefixes(2))
      CHECK(act_prefix(p, s) == act_prefix(Word(GroupTag::H, {g}), s));
  }
}

TEST_CASE("compose and invert") {
  const int n = 2;
  const auto P = [n](char ch) {
    return word_to_portrait(Word::parse(GroupTag::H, std::string(1, ch)), n);
  };
  CHECK(compose(P('a'), invert(P('a'))).is_identity());
  CHECK(nodes_of(compose(P('b'), P('b'))) == Nodes{0, 2, 0});
  CHECK(nodes_of(compose(P('a'), P('b'))) == Nodes{1, 1, 0});
  CHECK(nodes_of(compose(P('b'), P('a'))) == Nodes{1, 0, 1});
  CHECK(compose(P('a'), P('b')) != compose(P('b'), P('a')));

  CHECK(invert(Portrait::identity(GroupTag::H, 3)).is_identity());
  CHECK(nodes_of(invert(generator_portrait({Letter::a, false}, 1, GroupTag::H))) == Nodes{-1});
  CHECK(nodes_of(invert(P('b'))) == Nodes{0, -1, 0});
  CHECK(compose(P('b'), invert(P('b'))).is_identity());

  CHECK_THROWS_AS(compose(P('a'), Portrait::identity(GroupTag::H, 3)), DepthMismatch);
  CHECK_THROWS_AS(compose(P('a'), Portrait::identity(GroupTag::G, 2)), DepthMismatch);
}

TEST_CASE("composition follows the prefix action") {
  // act(compose(p, q), s) = act(p, act(q, s))
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 5;
    const Portrait p = word_to_portrait(random_word(rng, GroupTag::H, 8), n);
    const Portrait q = word_to_portrait(random_word(rng, GroupTag::H, 8), n);
    const auto s = random_prefix(rng, GroupTag::H, n);
    CHECK(act_prefix(compose(p, q), s) == act_prefix(p, act_prefix(q, s)));
  }
}

TEST_CASE("word_to_portrait relations") {
  for (int n = 0; n <= 6; ++n) {
    CHECK(word_to_portrait(W("aA"), n).is_identity());
    CHECK(word_to_portrait(W("aabAAB"), n).is_identity());
    CHECK(word_to_portrait(W("bcBC"), n).is_identity());
    // Same facts from the prefix oracle.
    if (n >= 1 && n <= 4) {
      CHECK(same_action(W("aabAAB"), W(""), n));
      CHECK(same_action(W("bcBC"), W(""), n));
    }
  }
}

TEST_CASE("act_prefix examples") {
  CHECK(act_prefix(W("a"), {0, 0}) == IntegerPrefix{1, 0});
  CHECK(act_prefix(W("b"), {1, 2, 3}) == IntegerPrefix{1, 2, 4});
  CHECK(act_prefix(W("d"), {2, 7}) == IntegerPrefix{2, 7});
  CHECK(act_prefix(word_to_portrait(W("b"), 3), {1, 2, 3}) == IntegerPrefix{1, 2, 4});
  CHECK(act_prefix(word_to_portrait(W("a"), 2), {0, 0}) == IntegerPrefix{1, 0});
  // Shorter prefixes are allowed, longer ones are not.
  CHECK(act_prefix(word_to_portrait(W("b"), 3), {1}) == IntegerPrefix{1});
  CHECK_THROWS_AS(act_prefix(word_to_portrait(W("b"), 1), {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(act_prefix(W("a", GroupTag::G), {2}), std::invalid_argument);
}

TEST_CASE("equal_at_level") {
  CHECK(equal_at_level(W("b"), W("c"), 2));
  CHECK_FALSE(equal_at_level(W("b"), W("c"), 3));
  // Prefix oracle agrees.
  CHECK(same_action(W("b"), W("c"), 2));
  CHECK_FALSE(same_action(W("b"), W("c"), 3));
  CHECK(equal_at_level(W("d"), W(""), 2));
  CHECK_FALSE(equal_at_level(W("d"), W(""), 3));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const Word w = random_word(rng, GroupTag::H, 10);
    CHECK(equal_at_level(w, w, 1 + i % 6));
  }
  CHECK_THROWS_AS(equal_at_level(W("a"), W("a", GroupTag::G), 2), std::invalid_argument);
}

TEST_CASE("ball sizes") {
  const auto t1 = ball_sizes(GroupTag::H, 1, 10);
  REQUIRE(t1.counts.size() == 11);
  for (int r = 0; r <= 10; ++r) CHECK(t1.counts[r] == static_cast<std::uint64_t>(2 * r + 1));
  CHECK(ball_sizes(GroupTag::H, 2, 1).counts[1] == 5);
  for (int n = 3; n <= 6; ++n) CHECK(ball_sizes(GroupTag::H, n, 1).counts[1] == 9);

  SUBCASE("threaded expansion gives the same table") {
    BallOptions par;
    par.threads = 4;
    const auto seq = ball_sizes(GroupTag::H, 4, 5);
    const auto thr = ball_sizes(GroupTag::H, 4, 5, par);
    CHECK(seq.counts == thr.counts);
  }
  SUBCASE("element cap truncates") {
    BallOptions capped;
    capped.element_cap = 20;
    const auto t = ball_sizes(GroupTag::H, 4, 5, capped);
    CHECK(t.truncated);
    CHECK(t.completed_radius() < 5);
    CHECK(t.counts.back() <= 20);
  }
  SUBCASE("BFS agrees with brute-force word enumeration") {
    // Every word of length <= 3, deduplicated by portrait.
    for (int n = 2; n <= 4; ++n) {
      std::set<Nodes> seen;
      std::vector<Word> words{Word(GroupTag::H, {})};
      std::vector<std::uint64_t> expected;
      for (int r = 0; r <= 3; ++r) {
        if (r > 0) {
          std::vector<Word> next;
          for (const auto& w : words)
            for (auto g : signed_generators()) next.push_back(w * Word(GroupTag::H, {g}));
          words = std::move(next);
        }
        for (const auto& w : words) seen.insert(nodes_of(word_to_portrait(w, n)));
        expected.push_back(seen.size());
      }
      CHECK(ball_sizes(GroupTag::H, n, 3).counts == expected);
    }
  }
  CHECK_THROWS_AS(ball_sizes(GroupTag::H, 0, 3), std::invalid_argument);
}

TEST_CASE("growth CSV round trip") {
  const auto t = ball_sizes(GroupTag::H, 3, 4);
  std::stringstream ss;
  write_growth_csv(ss, t);
  CHECK(ss.str().rfind("level,r,count\n3,0,1\n3,1,9\n", 0) == 0);
  const auto back = read_growth_csv(ss, GroupTag::H);
  REQUIRE(back.size() == 1);
  CHECK(back[0].counts == t.counts);
  CHECK(back[0].level == 3);
}

TEST_CASE("orders in G") {
  for (int n = 1; n <= 8; ++n) CHECK(order_at_level(W("a", GroupTag::G), n, 1024) == 2u);
  CHECK(order_at_level(W("b", GroupTag::G), 5, 1024) == 2u);
  CHECK(order_at_level(W("ab", GroupTag::G), 8, 1024) == 16u);

  // Independent oracle: least t with (ab)^t fixing every binary prefix of length 8.
  const Word ab = W("ab", GroupTag::G);
  std::uint64_t t = 1;
  Word pw = ab;
  const auto prefixes = all_bit_prefixes(8);
  while (true) {
    bool trivial = true;
    for (const auto& s : prefixes)
      if (act_prefix(pw, s) != s) {
        trivial = false;
        break;
      }
    if (trivial) break;
    pw = pw * ab;
    ++t;
  }
  CHECK(t == 16);

  CHECK(order_at_level(W("", GroupTag::G), 4, 8) == 1u);
  CHECK_FALSE(order_at_level(W("ab", GroupTag::G), 8, 8).has_value());
  // H/H_n is torsion free.
  CHECK_FALSE(order_at_level(W("b"), 3, 256).has_value());
}

TEST_CASE("portrait truncation is the coarser quotient") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const Word w = random_word(rng, GroupTag::H, 12);
    CHECK(word_to_portrait(w, 6).truncate(3) == word_to_portrait(w, 3));
    CHECK(word_to_portrait(w, 4).truncate(0) == Portrait::identity(GroupTag::H, 0));
  }
}

TEST_CASE("child sections") {
  const Portrait b = word_to_portrait(W("b"), 3);
  CHECK(b.child(0) == word_to_portrait(W("a"), 2));
  CHECK(b.child(1) == word_to_portrait(W("c"), 2));
  CHECK(Portrait::node(0, b.child(0), b.child(1)) == b);
  CHECK_THROWS_AS(Portrait::identity(GroupTag::H, 0).child(0), std::out_of_range);
}

TEST_CASE("portrait JSON round trip") {
  CHECK(portrait_to_json(Portrait::identity(GroupTag::H, 0)) == R"({"e":null,"m":0,"o":null})");
  const Portrait a1 = generator_portrait({Letter::a, false}, 1, GroupTag::H);
  CHECK(portrait_to_json(a1) ==
        R"({"e":{"e":null,"m":0,"o":null},"m":1,"o":{"e":null,"m":0,"o":null}})");
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    const GroupTag tag = trial % 2 ? GroupTag::G : GroupTag::H;
    const Portrait p = word_to_portrait(random_word(rng, tag, 12), trial % 7);
    CHECK(portrait_from_json(portrait_to_json(p), tag) == p);
  }
  CHECK_THROWS_AS(portrait_from_json("{\"m\":1}", GroupTag::H), std::invalid_argument);
  CHECK_THROWS_AS(portrait_from_json(R"({"m":0,"e":{"m":0,"e":null,"o":null},"o":null})", GroupTag::H),
                  std::invalid_argument);
  CHECK_THROWS_AS(portrait_from_json(R"({"m":3,"e":{"m":0,"e":null,"o":null},"o":{"m":0,"e":null,"o":null}})",
                                     GroupTag::G),
                  std::invalid_argument);
}

}  // TEST_SUITE
