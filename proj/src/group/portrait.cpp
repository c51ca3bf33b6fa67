#include "ivdiff/group/portrait.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace ivdiff::group {

namespace {

using Offset = Portrait::Offset;

inline std::size_t node_count(int depth) { return (std::size_t{1} << depth) - 1; }

void check_depth(int depth) {
  if (depth < 0 || depth > Portrait::max_depth)
    throw std::out_of_range("portrait depth " + std::to_string(depth) + " outside [0, " +
                            std::to_string(Portrait::max_depth) + "]");
}

inline Offset add_checked(Offset x, Offset y, GroupTag tag) {
  Offset out;
  if (__builtin_add_overflow(x, y, &out)) throw std::overflow_error("portrait offset overflow");
  return tag == GroupTag::G ? (out & 1) : out;
}

inline int parity(Offset x) { return static_cast<int>(x & 1); }

// Fills a preorder span for a signed generator at the span's depth.
void fill_generator(Letter letter, bool inverse, GroupTag tag, std::span<Offset> out) {
  if (out.empty()) return;
  const std::size_t half = (out.size() - 1) / 2;
  auto even = out.subspan(1, half);
  auto odd = out.subspan(1 + half, half);
  out[0] = 0;
  switch (letter) {
    case Letter::a:
      out[0] = (tag == GroupTag::G || !inverse) ? 1 : -1;
      std::fill(even.begin(), even.end(), 0);
      std::fill(odd.begin(), odd.end(), 0);
      return;
    case Letter::b:
      fill_generator(Letter::a, inverse, tag, even);
      fill_generator(Letter::c, inverse, tag, odd);
      return;
    case Letter::c:
      fill_generator(Letter::a, inverse, tag, even);
      fill_generator(Letter::d, inverse, tag, odd);
      return;
    case Letter::d:
      std::fill(even.begin(), even.end(), 0);
      fill_generator(Letter::b, inverse, tag, odd);
      return;
  }
}

void compose_into(std::span<const Offset> p, std::span<const Offset> q, std::span<Offset> out,
                  GroupTag tag) {
  if (out.empty()) return;
  out[0] = add_checked(p[0], q[0], tag);
  const std::size_t half = (out.size() - 1) / 2;
  if (half == 0) return;
  const int shift = parity(q[0]);
  for (int r = 0; r < 2; ++r) {
    const int src = (r + shift) & 1;
    compose_into(p.subspan(1 + src * half, half), q.subspan(1 + r * half, half),
                 out.subspan(1 + r * half, half), tag);
  }
}

void invert_into(std::span<const Offset> p, std::span<Offset> out, GroupTag tag) {
  if (out.empty()) return;
  if (p[0] == std::numeric_limits<Offset>::min()) throw std::overflow_error("portrait offset overflow");
  out[0] = tag == GroupTag::G ? (p[0] & 1) : -p[0];
  const std::size_t half = (out.size() - 1) / 2;
  if (half == 0) return;
  const int shift = parity(p[0]);
  for (int r = 0; r < 2; ++r) {
    const int src = (r + shift) & 1;
    invert_into(p.subspan(1 + src * half, half), out.subspan(1 + r * half, half), tag);
  }
}

}  // namespace

Portrait Portrait::identity(GroupTag tag, int depth) {
  check_depth(depth);
  return Portrait(tag, depth, std::vector<Offset>(node_count(depth), 0));
}

Portrait Portrait::node(Offset offset, const Portrait& even, const Portrait& odd) {
  if (even.depth_ != odd.depth_ || even.tag_ != odd.tag_)
    throw DepthMismatch("children of a portrait node must share depth and group");
  check_depth(even.depth_ + 1);
  std::vector<Offset> nodes;
  nodes.reserve(node_count(even.depth_ + 1));
  nodes.push_back(even.tag_ == GroupTag::G ? (offset & 1) : offset);
  nodes.insert(nodes.end(), even.nodes_.begin(), even.nodes_.end());
  nodes.insert(nodes.end(), odd.nodes_.begin(), odd.nodes_.end());
  return Portrait(even.tag_, even.depth_ + 1, std::move(nodes));
}

Portrait Portrait::from_nodes(GroupTag tag, int depth, std::vector<Offset> nodes) {
  check_depth(depth);
  if (nodes.size() != node_count(depth))
    throw std::invalid_argument("portrait of depth " + std::to_string(depth) + " needs " +
                                std::to_string(node_count(depth)) + " offsets");
  if (tag == GroupTag::G)
    for (auto m : nodes)
      if (m != 0 && m != 1) throw std::invalid_argument("G portrait offsets must be 0 or 1");
  return Portrait(tag, depth, std::move(nodes));
}

Portrait Portrait::child(int parity_bit) const {
  if (depth_ == 0) throw std::out_of_range("the depth-0 portrait has no children");
  const std::size_t half = (nodes_.size() - 1) / 2;
  const auto first = nodes_.begin() + 1 + (parity_bit & 1) * static_cast<std::ptrdiff_t>(half);
  return Portrait(tag_, depth_ - 1, std::vector<Offset>(first, first + static_cast<std::ptrdiff_t>(half)));
}

bool Portrait::is_identity() const {
  for (auto m : nodes_)
    if (m != 0) return false;
  return true;
}

Portrait Portrait::truncate(int depth) const {
  if (depth < 0 || depth > depth_) throw std::out_of_range("truncation depth out of range");
  if (depth == depth_) return *this;
  std::vector<Offset> out;
  out.reserve(node_count(depth));
  // Preorder walk keeping nodes whose level is below `depth`.
  struct Frame {
    std::size_t pos;
    int level;
    std::size_t size;
  };
  std::vector<Frame> stack{{0, 0, nodes_.size()}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (f.level >= depth || f.size == 0) continue;
    out.push_back(nodes_[f.pos]);
    const std::size_t half = (f.size - 1) / 2;
    stack.push_back({f.pos + 1 + half, f.level + 1, half});
    stack.push_back({f.pos + 1, f.level + 1, half});
  }
  return Portrait(tag_, depth, std::move(out));
}

std::size_t Portrait::hash() const {
  // splitmix64 finalizer folded over the offsets.
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(depth_);
  for (auto m : nodes_) {
    std::uint64_t z = h + static_cast<std::uint64_t>(m) + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    h = z ^ (z >> 31);
  }
  return static_cast<std::size_t>(h);
}

Portrait generator_portrait(SignedGenerator g, int depth, GroupTag tag) {
  check_depth(depth);
  std::vector<Offset> nodes(node_count(depth), 0);
  fill_generator(g.letter, g.inverse, tag, nodes);
  return Portrait(tag, depth, std::move(nodes));
}

Portrait compose(const Portrait& p, const Portrait& q) {
  if (p.depth_ != q.depth_)
    throw DepthMismatch("cannot compose portraits of depths " + std::to_string(p.depth_) + " and " +
                        std::to_string(q.depth_));
  if (p.tag_ != q.tag_) throw DepthMismatch("cannot compose portraits of different groups");
  std::vector<Offset> out(p.nodes_.size());
  compose_into(p.nodes_, q.nodes_, out, p.tag_);
  return Portrait(p.tag_, p.depth_, std::move(out));
}

Portrait invert(const Portrait& p) {
  std::vector<Offset> out(p.nodes_.size());
  invert_into(p.nodes_, out, p.tag_);
  return Portrait(p.tag_, p.depth_, std::move(out));
}

Portrait word_to_portrait(const Word& w, int depth) {
  Portrait acc = Portrait::identity(w.group(), depth);
  for (auto g : w.letters()) acc = compose(acc, generator_portrait(g, depth, w.group()));
  return acc;
}

IntegerPrefix act_prefix(const Portrait& p, const IntegerPrefix& s) {
  if (s.size() > static_cast<std::size_t>(p.depth()))
    throw std::invalid_argument("prefix longer than portrait depth");
  IntegerPrefix out(s.size());
  const auto nodes = p.nodes();
  std::size_t pos = 0;
  std::size_t size = nodes.size();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (p.group() == GroupTag::G && s[i] != 0 && s[i] != 1)
      throw std::invalid_argument("prefix entries for G must be bits");
    out[i] = add_checked(s[i], nodes[pos], p.group());
    const std::size_t half = (size - 1) / 2;
    pos = pos + 1 + static_cast<std::size_t>(parity(s[i])) * half;
    size = half;
  }
  return out;
}

bool equal_at_level(const Word& w1, const Word& w2, int depth) {
  if (w1.group() != w2.group()) throw std::invalid_argument("words belong to different groups");
  return word_to_portrait(w1, depth) == word_to_portrait(w2, depth);
}

std::optional<std::uint64_t> order_at_level(const Word& w, int depth, std::uint64_t cap) {
  const Portrait p = word_to_portrait(w, depth);
  if (p.is_identity()) return 1;
  Portrait q = p;
  for (std::uint64_t e = 2; e <= cap; e *= 2) {
    q = compose(q, q);
    if (q.is_identity()) return e;  // p^(e/2) is not trivial, so the order is exactly e
    if (e > cap / 2) break;
  }
  // Orders that are not powers of two.
  Portrait acc = p;
  for (std::uint64_t t = 2; t <= cap; ++t) {
    acc = compose(acc, p);
    if (acc.is_identity()) return t;
  }
  return std::nullopt;
}

}  // namespace ivdiff::group
