#include "ivdiff/dynamics/crossed.hpp"

#include <json.hpp>

namespace ivdiff::dynamics {

std::string to_string(Role r) { return r == Role::f ? "f" : "g"; }
std::string to_string(Side s) { return s == Side::left ? "left" : "right"; }

namespace {

bool inside(const Rational& x, const Rational& u, const Rational& v) { return u < x && x < v; }

std::optional<CrossWitness> scan(const PLHomeo& fixer, const PLHomeo& mover, Role fr, Role mr) {
  auto comps = fixed_intervals(fixer);
  for (std::size_t i = 0; i + 1 < comps.size(); ++i) {
    const Rational& u = comps[i].hi;
    const Rational& v = comps[i + 1].lo;
    if (mover.in_domain(u) && inside(mover(u), u, v)) return CrossWitness{u, v, fr, mr, Side::left};
    if (mover.in_domain(v) && inside(mover(v), u, v)) return CrossWitness{u, v, fr, mr, Side::right};
  }
  return std::nullopt;
}

}  // namespace

std::optional<CrossWitness> detect_crossed(const PLHomeo& f, const PLHomeo& g) {
  if (auto w = scan(f, g, Role::f, Role::g)) return w;
  return scan(g, f, Role::g, Role::f);
}

std::string witness_problem(const PLHomeo& f, const PLHomeo& g, const CrossWitness& w) {
  if (w.fixer == w.mover) return "fixer and mover coincide";
  const PLHomeo& F = w.fixer == Role::f ? f : g;
  const PLHomeo& G = w.mover == Role::f ? f : g;
  if (!(w.u < w.v)) return "u must be below v";
  if (!F.in_domain(w.u) || !F.in_domain(w.v) || !G.in_domain(w.u) || !G.in_domain(w.v))
    return "witness interval outside the common domain";
  if (F(w.u) != w.u || F(w.v) != w.v) return "fixer does not fix both endpoints";
  for (const auto& c : fixed_intervals(F))
    if (c.hi > w.u && c.lo < w.v) return "fixer has a fixed point inside (u,v)";
  const Rational& e = w.side == Side::left ? w.u : w.v;
  if (!inside(G(e), w.u, w.v)) return "mover does not send the endpoint into (u,v)";
  return {};
}

namespace {

struct Core {
  long m, n;
  PLHomeo h1, h2;
  Interval X, X1, X2;
};

// Left-side construction: F < id on (u,v), G(u) ∈ (u,v).
Core build(const PLHomeo& F, const PLHomeo& G, const Rational& u, const Rational& v, long cap) {
  const Rational w = G(u);
  const Rational zp = (w + v) / 2;
  PLHomeo Fn = F;
  long n = 1;
  std::optional<Rational> z;
  std::optional<PLHomeo> h2;
  for (; n <= cap; ++n, Fn = pl_compose(F, Fn)) {
    PLHomeo H = pl_compose(G, Fn);
    bool hit = false;
    std::optional<Rational> first;
    for (const auto& c : fixed_intervals(H)) {
      if (c.lo > u && c.lo < v && !first) first = c.lo;
      if (c.hi > u && c.lo < zp) hit = true;
    }
    if (hit && first) {
      z = *first;
      h2 = std::move(H);
      break;
    }
  }
  if (!z)
    throw SearchCapExceeded("pingpong: no n <= " + std::to_string(cap) +
                            " with g∘f^n fixing a point of (u, z')");
  long m = 1;
  Rational fz = F(*z);
  for (; m <= cap && !(fz < w); ++m) fz = F(fz);
  if (!(fz < w))
    throw SearchCapExceeded("pingpong: n = " + std::to_string(n) + " found, but f^m(z) >= w for all m <= " +
                            std::to_string(cap));
  return Core{m, n, pl_power(F, m), *h2, {u, *z}, {u, fz}, {w, *z}};
}

bool subset(const Interval& a, const Interval& b) { return b.lo <= a.lo && a.hi <= b.hi; }

}  // namespace

PingPongCert pingpong_certificate(const PLHomeo& f, const PLHomeo& g, const CrossWitness& w, long cap) {
  if (auto why = witness_problem(f, g, w); !why.empty()) throw std::invalid_argument("witness invalid: " + why);
  PLHomeo F = w.fixer == Role::f ? f : g;
  PLHomeo G = w.mover == Role::f ? f : g;
  Rational u = w.u, v = w.v;
  const bool reflected = w.side == Side::right;
  if (reflected) {
    F = pl_reflect(F);
    G = pl_reflect(G);
    Rational t = -v;
    v = -u;
    u = t;
  }
  const bool inverted = F((u + v) / 2) > (u + v) / 2;
  if (inverted) F = pl_invert(F);
  Core c = build(F, G, u, v, cap);
  if (reflected) {
    c.h1 = pl_reflect(c.h1);
    c.h2 = pl_reflect(c.h2);
    auto flip = [](const Interval& I) { return Interval{-I.hi, -I.lo}; };
    c.X = flip(c.X);
    c.X1 = flip(c.X1);
    c.X2 = flip(c.X2);
  }
  PingPongCert cert{w, inverted, reflected, c.m, c.n, c.h1, c.h2, c.X, c.X1, c.X2, false};
  cert.verified = verify_pingpong(cert);
  return cert;
}

bool verify_pingpong(const PingPongCert& c) {
  if (!(c.X.lo < c.X.hi) || !subset(c.X1, c.X) || !subset(c.X2, c.X)) return false;
  if (!(c.X1.hi < c.X2.lo || c.X2.hi < c.X1.lo)) return false;
  for (const auto* h : {&c.h1, &c.h2})
    if (!h->in_domain(c.X.lo) || !h->in_domain(c.X.hi)) return false;
  // Increasing maps: the image of an interval is spanned by its endpoint images.
  Interval i1{c.h1(c.X.lo), c.h1(c.X.hi)};
  Interval i2{c.h2(c.X.lo), c.h2(c.X.hi)};
  return subset(i1, c.X1) && subset(i2, c.X2);
}

namespace {

nlohmann::json interval_json(const Interval& I) { return {format_rational(I.lo), format_rational(I.hi)}; }

nlohmann::json pl_json(const PLHomeo& h) {
  nlohmann::json knots = nlohmann::json::array();
  for (std::size_t i = 0; i < h.xs().size(); ++i)
    knots.push_back({format_rational(h.xs()[i]), format_rational(h.ys()[i])});
  return knots;
}

nlohmann::json witness_json(const CrossWitness& w) {
  return {{"u", format_rational(w.u)},
          {"v", format_rational(w.v)},
          {"fixer", to_string(w.fixer)},
          {"mover", to_string(w.mover)},
          {"side", to_string(w.side)}};
}

}  // namespace

std::string witness_to_json(const CrossWitness& w) { return witness_json(w).dump(2); }

std::string certificate_to_json(const PingPongCert& c) {
  nlohmann::json j{{"witness", witness_json(c.witness)},
                   {"fixer_inverted", c.fixer_inverted},
                   {"reflected", c.reflected},
                   {"m", c.m},
                   {"n", c.n},
                   {"h1", pl_json(c.h1)},
                   {"h2", pl_json(c.h2)},
                   {"X", interval_json(c.X)},
                   {"X1", interval_json(c.X1)},
                   {"X2", interval_json(c.X2)},
                   {"verified", c.verified}};
  return j.dump(2);
}

}  // namespace ivdiff::dynamics
