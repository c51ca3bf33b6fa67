#include "ivdiff/action/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

namespace ivdiff::action {

using geometry::Certified;
using group::Letter;
using group::Portrait;
using group::SignedGenerator;

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr std::int64_t search_limit = std::int64_t{1} << 52;

int parity(std::int64_t l) { return static_cast<int>(((l % 2) + 2) % 2); }

std::size_t generator_slot(SignedGenerator g) {
  return static_cast<std::size_t>(g.letter) * 2 + (g.inverse ? 1 : 0);
}

}  // namespace

std::string_view to_string(PieceKind k) {
  switch (k) {
    case PieceKind::I_leaf:
      return "I_leaf";
    case PieceKind::J_gap:
      return "J_gap";
    case PieceKind::residual:
      return "residual";
  }
  return "?";
}

void ActionConfig::validate() const {
  geometry.validate();
  if (depth < 1 || depth > geometry.n_max())
    throw std::invalid_argument("depth must lie in [1, n_max] (n_max = " + std::to_string(geometry.n_max()) + ")");
  if (depth > Portrait::max_depth) throw std::invalid_argument("depth too large");
}

Embedding::Embedding(ActionConfig cfg) : cfg_(std::move(cfg)), sys_(cfg_.geometry) {
  cfg_.validate();
  for (const auto g : group::signed_generators())
    generators_[generator_slot(g)] = group::generator_portrait(g, cfg_.depth, group::GroupTag::H);
}

double Embedding::ambient_length() const {
  return cfg_.normalization == Normalization::none ? total_length() : 1.0;
}

const Portrait& Embedding::generator(SignedGenerator g) const { return generators_[generator_slot(g)]; }

double Embedding::piece_length(const PieceLocator& p) const {
  switch (p.kind) {
    case PieceKind::I_leaf:
      return sys_.length_I(p.index).value;
    case PieceKind::J_gap:
      return sys_.length_J(p.index).value;
    case PieceKind::residual:
      return 0.0;
  }
  return 0.0;
}

PiecePoint Embedding::locate(double x) const {
  const Certified T = sys_.total_length();
  const double raw = cfg_.normalization == Normalization::none ? x : x * T.value;
  if (!(raw >= 0.0) || raw > T.value + T.err) throw std::out_of_range("point outside the ambient interval");
  return descend({}, std::min(raw, T.value), cfg_.normalization == Normalization::none ? 0.0 : eps * raw);
}

PiecePoint Embedding::descend(IntervalIndex idx, double y, double e) const {
  const auto n = static_cast<std::size_t>(cfg_.depth);
  if (idx.size() >= n) throw std::invalid_argument("descend must start above the leaf level");
  while (true) {
    const std::size_t m = idx.size();
    const Certified kids = sys_.children_sum(idx);
    if (m == 0 && y >= kids.value - (e + kids.err))
      return {{PieceKind::residual, {}}, sys_.total_length().value, e};
    if (m > 0 && y >= kids.value - (e + kids.err)) {
      const double gap = sys_.length_J(idx).value;
      const double local = y <= kids.value + e + kids.err ? 0.0 : std::min(y - kids.value, gap);
      return {{PieceKind::J_gap, std::move(idx)}, local, e + kids.err};
    }
    if (y <= e) return {{PieceKind::residual, std::move(idx)}, 0.0, e};

    // Largest l with F(l) <= y, where F(l) = a_{idx,l} - a_idx.
    auto F = [&](std::int64_t l) { return sys_.child_offset(idx, l); };
    std::int64_t lo, hi;
    if (F(0).value <= y) {
      lo = 0;
      std::int64_t step = 1;
      while (F(lo + step).value <= y) {
        lo += step;
        if (step >= search_limit) return {{PieceKind::residual, std::move(idx)}, 0.0, e};
        step *= 2;
      }
      hi = lo + step;
    } else {
      hi = 0;
      std::int64_t step = 1;
      while (F(-step).value > y) {
        hi = -step;
        if (step >= search_limit) return {{PieceKind::residual, std::move(idx)}, 0.0, e};
        step *= 2;
      }
      lo = -step;
    }
    while (hi - lo > 1) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      (F(mid).value <= y ? lo : hi) = mid;
    }

    const Certified left = F(lo);
    const Certified right = F(lo + 1);
    bool snapped = true;
    if (right.value - y <= e + right.err) {
      idx.push_back(lo + 1);
      y = 0.0;
      e += right.err;
    } else if (y - left.value <= e + left.err) {
      idx.push_back(lo);
      y = 0.0;
      e += left.err;
    } else {
      snapped = false;
      idx.push_back(lo);
      y -= left.value;
      e += left.err + eps * y;
    }
    if (idx.size() == n) return {{PieceKind::I_leaf, std::move(idx)}, y, e};
    if (snapped) return {{PieceKind::residual, std::move(idx)}, 0.0, e};
  }
}

Certified Embedding::offset_in(const PiecePoint& p, std::size_t ancestor_depth) const {
  const auto& idx = p.piece.index;
  if (ancestor_depth > idx.size()) throw std::invalid_argument("ancestor deeper than the point");
  Certified off{p.local, p.err};
  if (p.piece.kind == PieceKind::J_gap) {
    const Certified kids = sys_.children_sum(idx);
    off.value += kids.value;
    off.err += kids.err + eps * off.value;
  }
  for (std::size_t j = idx.size(); j-- > ancestor_depth;) {
    const Certified f = sys_.child_offset(std::span(idx).first(j), idx[j]);
    off.value += f.value;
    off.err += f.err + eps * off.value;
  }
  return off;
}

std::optional<PiecePoint> Embedding::advance(const PiecePoint& p, double h) const {
  if (!(h > 0.0)) throw std::invalid_argument("advance needs h > 0");
  const auto& idx = p.piece.index;
  if (p.piece.kind != PieceKind::residual) {
    const double len = piece_length(p.piece);
    if (p.local + h < len) return PiecePoint{p.piece, p.local + h, p.err + eps * (p.local + h)};
  }
  const auto n = static_cast<std::size_t>(cfg_.depth);
  for (std::size_t m = std::min(idx.size(), n - 1) + 1; m-- > 0;) {
    const Certified off = offset_in(p, m);
    const Certified len = sys_.length_I(std::span(idx).first(m));
    const double y = off.value + h;
    if (y < len.value - len.err) {
      return descend(IntervalIndex(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(m)), y,
                     off.err + eps * y);
    }
  }
  return std::nullopt;
}

double Embedding::coordinate(const PiecePoint& p) const {
  const double raw = offset_in(p, 0).value;
  return cfg_.normalization == Normalization::none ? raw : raw / total_length();
}

Jet Embedding::carry(const PiecePoint& x, IntervalIndex target) const {
  if (x.piece.kind == PieceKind::residual) {
    if (x.piece.index.empty()) return {x, 1.0};
    return {{{PieceKind::residual, std::move(target)}, 0.0, x.err}, 1.0};
  }
  const double u = piece_length(x.piece);
  PieceLocator out{x.piece.kind, std::move(target)};
  const double v = piece_length(out);
  if (!(u > 0.0) || !(v > 0.0)) return {{std::move(out), 0.0, x.err}, 1.0};
  const auto jet = geometry::phi_eval(cfg_.family, u, v, std::clamp(x.local, 0.0, u));
  return {{std::move(out), jet.value, x.err * jet.derivative + eps * jet.value}, jet.derivative};
}

Jet Embedding::apply(const Portrait& p, const PiecePoint& x) const {
  if (x.piece.kind == PieceKind::residual && x.piece.index.empty()) return {x, 1.0};
  return carry(x, group::act_prefix(p, x.piece.index));
}

Jet Embedding::apply_letters(const group::Word& w, const PiecePoint& x) const {
  Jet out{x, 1.0};
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    const Jet step = apply(generator(*it), out.point);
    out.point = step.point;
    out.derivative *= step.derivative;
  }
  return out;
}

double Embedding::eval(const group::Word& w, double x) const {
  return coordinate(apply_word(w, locate(x)).point);
}

double Embedding::derivative(const group::Word& w, double x) const {
  const PiecePoint p = locate(x);
  if (p.piece.kind == PieceKind::residual)
    throw ResidualPoint("derivative requested at a residual point " + geometry::format_index(p.piece.index));
  return apply_word(w, p).derivative;
}

IntervalIndex literal_target(SignedGenerator g, const PieceLocator& piece) {
  IntervalIndex idx = piece.index;
  if (idx.empty()) return idx;
  const std::int64_t shift = g.inverse ? -1 : 1;
  // Chain state; `id` is represented by nullopt.
  std::optional<Letter> state = g.letter;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (!state) return idx;
    if (*state == Letter::a) {
      idx[i] += shift;
      return idx;
    }
    const bool odd = parity(idx[i]) == 1;
    switch (*state) {
      case Letter::b:
        state = odd ? Letter::c : Letter::a;
        break;
      case Letter::c:
        state = odd ? std::optional(Letter::d) : std::optional(Letter::a);
        break;
      case Letter::d:
        state = odd ? std::optional(Letter::b) : std::nullopt;
        break;
      case Letter::a:
        break;
    }
  }
  return idx;
}

Jet literal_apply(const Embedding& emb, SignedGenerator g, const PiecePoint& x) {
  if (x.piece.kind == PieceKind::residual && x.piece.index.empty()) return {x, 1.0};
  return emb.carry(x, literal_target(g, x.piece));
}

void write_plot_tsv(std::ostream& out, const Embedding& emb, const group::Word& w, std::size_t resolution) {
  if (resolution == 0) throw std::invalid_argument("resolution must be positive");
  const group::Portrait p = emb.portrait(w);
  const double L = emb.ambient_length();
  out << "x\tf\tdf\n";
  out.precision(17);
  for (std::size_t i = 0; i <= resolution; ++i) {
    const double x = i == resolution ? L : L * (static_cast<double>(i) / static_cast<double>(resolution));
    const Jet j = emb.apply(p, emb.locate(x));
    out << x << '\t' << emb.coordinate(j.point) << '\t' << j.derivative << '\n';
  }
}

}  // namespace ivdiff::action
