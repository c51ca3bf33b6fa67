#include "ivdiff/dynamics/pl.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ivdiff::dynamics {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.pop_back();
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  auto digits = [](std::string_view t, bool allow_sign) {
    if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
    return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits(num, true) || !digits(den, false)) throw std::invalid_argument("bad rational: " + s);
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: " + s);
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

PLHomeo::PLHomeo(std::vector<Rational> xs, std::vector<Rational> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("PLHomeo needs at least two knots with matching values");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i - 1] < xs[i]) || !(ys[i - 1] < ys[i]))
      throw std::invalid_argument("PLHomeo knots must be strictly increasing");
  xs_.push_back(xs[0]);
  ys_.push_back(ys[0]);
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    Rational s0 = (ys[i] - ys_.back()) / (xs[i] - xs_.back());
    Rational s1 = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
    if (s0 != s1) {
      xs_.push_back(xs[i]);
      ys_.push_back(ys[i]);
    }
  }
  xs_.push_back(xs.back());
  ys_.push_back(ys.back());
}

PLHomeo PLHomeo::identity(const Rational& lo, const Rational& hi) { return PLHomeo({lo, hi}, {lo, hi}); }

bool PLHomeo::in_domain(const Rational& x) const { return x >= xs_.front() && x <= xs_.back(); }
bool PLHomeo::in_range(const Rational& y) const { return y >= ys_.front() && y <= ys_.back(); }

namespace {

Rational interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys, const Rational& x) {
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t i = it == xs.end() ? xs.size() - 1 : static_cast<std::size_t>(it - xs.begin());
  if (i == 0) i = 1;
  return ys[i - 1] + (ys[i] - ys[i - 1]) * (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
}

}  // namespace

Rational PLHomeo::operator()(const Rational& x) const {
  if (!in_domain(x)) throw std::domain_error("PL map evaluated outside its domain: " + format_rational(x));
  return interpolate(xs_, ys_, x);
}

Rational PLHomeo::preimage(const Rational& y) const {
  if (!in_range(y)) throw std::domain_error("PL preimage outside the range: " + format_rational(y));
  return interpolate(ys_, xs_, y);
}

bool PLHomeo::is_identity() const { return xs_ == ys_; }

std::string PLHomeo::to_tsv() const {
  std::string out;
  for (std::size_t i = 0; i < xs_.size(); ++i) out += format_rational(xs_[i]) + "\t" + format_rational(ys_[i]) + "\n";
  return out;
}

PLHomeo PLHomeo::from_tsv(std::string_view text) {
  std::vector<Rational> xs, ys;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
      throw std::invalid_argument("PL TSV line " + std::to_string(lineno) + ": expected two tab-separated fields");
    xs.push_back(parse_rational(std::string_view(line).substr(0, tab)));
    ys.push_back(parse_rational(std::string_view(line).substr(tab + 1)));
  }
  return PLHomeo(std::move(xs), std::move(ys));
}

PLHomeo pl_compose(const PLHomeo& f, const PLHomeo& g) {
  Rational lo = std::max(f.domain_lo(), g.range_lo());
  Rational hi = std::min(f.domain_hi(), g.range_hi());
  if (!(lo < hi)) throw std::invalid_argument("pl_compose: domains do not overlap");
  std::vector<Rational> cut{g.preimage(lo), g.preimage(hi)};
  for (const auto& x : g.xs())
    if (x > cut[0] && x < cut[1]) cut.push_back(x);
  for (const auto& x : f.xs())
    if (x > lo && x < hi) cut.push_back(g.preimage(x));
  std::sort(cut.begin(), cut.end());
  cut.erase(std::unique(cut.begin(), cut.end()), cut.end());
  std::vector<Rational> ys;
  ys.reserve(cut.size());
  for (const auto& x : cut) ys.push_back(f(g(x)));
  return PLHomeo(std::move(cut), std::move(ys));
}

PLHomeo pl_invert(const PLHomeo& f) { return PLHomeo(f.ys(), f.xs()); }

PLHomeo pl_power(const PLHomeo& f, long k) {
  const PLHomeo base = k < 0 ? pl_invert(f) : f;
  PLHomeo out = PLHomeo::identity(base.domain_lo(), base.domain_hi());
  for (long i = 0; i < (k < 0 ? -k : k); ++i) out = pl_compose(base, out);
  return out;
}

PLHomeo pl_reflect(const PLHomeo& f) {
  std::vector<Rational> xs, ys;
  for (std::size_t i = f.xs().size(); i-- > 0;) {
    xs.push_back(-f.xs()[i]);
    ys.push_back(-f.ys()[i]);
  }
  return PLHomeo(std::move(xs), std::move(ys));
}

std::vector<FixedComponent> fixed_intervals(const PLHomeo& f) {
  std::vector<FixedComponent> out;
  auto add = [&](const Rational& lo, const Rational& hi) {
    if (!out.empty() && out.back().hi >= lo) {
      if (hi > out.back().hi) out.back().hi = hi;
      return;
    }
    out.push_back({lo, hi});
  };
  const auto& xs = f.xs();
  const auto& ys = f.ys();
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    Rational d0 = ys[i] - xs[i], d1 = ys[i + 1] - xs[i + 1];
    if (d0 == 0 && d1 == 0) {
      add(xs[i], xs[i + 1]);
    } else if (d0 == 0) {
      add(xs[i], xs[i]);
    } else if (d1 == 0) {
      add(xs[i + 1], xs[i + 1]);
    } else if ((d0 < 0) != (d1 < 0)) {
      Rational x = xs[i] + d0 * (xs[i + 1] - xs[i]) / (d0 - d1);
      add(x, x);
    }
  }
  return out;
}

}  // namespace ivdiff::dynamics
