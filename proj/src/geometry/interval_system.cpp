#include "ivdiff/geometry/interval_system.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>

#include "ivdiff/kernels/kernels.hpp"

namespace ivdiff::geometry {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr std::int64_t direct_limit = 1 << 16;

std::int64_t abs_sum(std::span<const std::int64_t> idx) {
  std::int64_t s = 0;
  for (const auto l : idx) {
    if (l == std::numeric_limits<std::int64_t>::min()) throw std::overflow_error("index entry too large");
    if (__builtin_add_overflow(s, l < 0 ? -l : l, &s)) throw std::overflow_error("index sum overflows");
  }
  return s;
}

}  // namespace

IntervalSystem::IntervalSystem(GeometryParams params) : params_(std::move(params)) {
  params_.validate();
  if (const auto* nv = std::get_if<NavasParams>(&params_.variant)) {
    length_depth_ = static_cast<int>(nv->k.size());
    total_ = navas_total_length(nv->k.front());
  } else {
    length_depth_ = params_.n_max();
    total_ = {1.0, 0.0};
  }
}

void IntervalSystem::check_depth(std::size_t depth, std::size_t limit, const char* what) const {
  if (depth > limit)
    throw DepthOutOfRange(std::string(what) + ": depth " + std::to_string(depth) + " exceeds " +
                          std::to_string(limit));
}

Certified IntervalSystem::length_I(std::span<const std::int64_t> idx) const {
  if (idx.empty()) return total_;
  check_depth(idx.size(), static_cast<std::size_t>(length_depth_), "length_I");
  if (const auto* nv = std::get_if<NavasParams>(&params_.variant)) {
    const double base = static_cast<double>(abs_sum(idx) + nv->k[idx.size() - 1]);
    const double value = std::pow(base, -2.0 * static_cast<double>(idx.size()));
    return {value, 2.0 * eps * value};
  }
  const auto& av = std::get<AffineParams>(params_.variant);
  const double r = av.ratio();
  const double q = (1.0 - r) / (1.0 + r);
  const double value = std::pow(q, static_cast<double>(idx.size())) *
                       std::pow(r, static_cast<double>(abs_sum(idx)));
  return {value, (4.0 + idx.size()) * eps * value};
}

Certified IntervalSystem::navas_children_sum(std::size_t depth, std::int64_t s) const {
  const auto key = std::make_pair(depth, s);
  {
    std::shared_lock lock(cache_mutex_);
    if (auto it = children_cache_.find(key); it != children_cache_.end()) return it->second;
  }
  const auto& nv = std::get<NavasParams>(params_.variant);
  const double c = static_cast<double>(s + nv.k[depth]);
  const Certified sum = power_sum_symmetric(c, 2 * static_cast<int>(depth) + 2);
  std::unique_lock lock(cache_mutex_);
  children_cache_.emplace(key, sum);
  return sum;
}

Certified IntervalSystem::children_sum(std::span<const std::int64_t> idx) const {
  if (idx.empty()) return total_;
  check_depth(idx.size() + 1, static_cast<std::size_t>(length_depth_), "children_sum");
  if (params_.is_navas()) return navas_children_sum(idx.size(), abs_sum(idx));
  return length_I(idx);
}

Certified IntervalSystem::length_J(std::span<const std::int64_t> idx) const {
  if (!has_gap(idx.size()))
    throw DepthOutOfRange("length_J: no gap at depth " + std::to_string(idx.size()));
  const Certified whole = length_I(idx);
  if (!params_.is_navas()) return {0.0, 0.0};
  const Certified kids = children_sum(idx);
  const double value = whole.value - kids.value;
  return {value, whole.err + kids.err + eps * value};
}

Certified IntervalSystem::child_offset(std::span<const std::int64_t> parent, std::int64_t l) const {
  check_depth(parent.size() + 1, static_cast<std::size_t>(length_depth_), "child_offset");
  if (l == std::numeric_limits<std::int64_t>::min()) throw std::overflow_error("child index too large");
  if (const auto* nv = std::get_if<NavasParams>(&params_.variant)) {
    const int p = 2 * static_cast<int>(parent.size()) + 2;
    const double c = static_cast<double>(abs_sum(parent) + nv->k[parent.size()]);
    if (l <= 0) return power_tail(c, 1 - l, p);
    const Certified left = power_tail(c, 1, p);
    if (l <= direct_limit) {
      const double head = kernels::inverse_power_sum(c, 0, l, p);
      const double value = left.value + head;
      return {value, left.err + (p + 4.0) * eps * head + eps * value};
    }
    const Certified all = children_sum(parent);
    const Certified rest = power_tail(c, l, p);
    const double value = all.value - rest.value;
    return {value, all.err + rest.err + eps * all.value};
  }
  const double r = std::get<AffineParams>(params_.variant).ratio();
  const Certified whole = length_I(parent);
  const double frac = l <= 0 ? std::pow(r, static_cast<double>(1 - l)) / (1.0 + r)
                             : (1.0 + r - std::pow(r, static_cast<double>(l))) / (1.0 + r);
  const double value = whole.value * frac;
  return {value, whole.err * frac + 6.0 * eps * value};
}

IntervalSystem::Endpoints IntervalSystem::endpoints(std::span<const std::int64_t> idx) const {
  check_depth(idx.size(), static_cast<std::size_t>(length_depth_), "endpoints");
  Endpoints e;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const Certified off = child_offset(idx.first(i), idx[i]);
    e.a += off.value;
    e.err += off.err + eps * e.a;
  }
  const Certified len = length_I(idx);
  e.b = e.a + len.value;
  e.err += len.err + eps * e.b;
  e.c = e.b;
  if (has_gap(idx.size())) {
    const Certified gap = length_J(idx);
    e.c = e.b - gap.value;
    e.has_gap = true;
    e.err += gap.err + eps * e.b;
  }
  return e;
}

std::string format_index(std::span<const std::int64_t> idx) {
  std::string s = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(idx[i]);
  }
  return s + ")";
}

IntervalIndex parse_index(const std::string& text) {
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    throw std::invalid_argument("index must look like (l1,l2,...)");
  IntervalIndex idx;
  const std::string body = text.substr(1, text.size() - 2);
  if (body.empty()) return idx;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    idx.push_back(std::stoll(item, &used));
    if (used != item.size()) throw std::invalid_argument("malformed index entry '" + item + "'");
  }
  return idx;
}

void write_interval_tsv(std::ostream& out, const IntervalSystem& sys,
                        std::span<const IntervalIndex> indices) {
  out << "idx\ta\tb\tc\tlenI\tlenJ\terr\n";
  out.precision(17);
  for (const auto& idx : indices) {
    const auto e = sys.endpoints(idx);
    const Certified len = sys.length_I(idx);
    const double gap = e.has_gap ? sys.length_J(idx).value : 0.0;
    out << format_index(idx) << '\t' << e.a << '\t' << e.b << '\t' << e.c << '\t' << len.value << '\t'
        << gap << '\t' << e.err << '\n';
  }
}

}  // namespace ivdiff::geometry
