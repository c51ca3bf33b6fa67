#include "ivdiff/group/growth.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>

namespace ivdiff::group {

namespace {

using PortraitSet = std::unordered_set<Portrait, PortraitHash>;

// Products of one frontier slice with every generator that are not yet
// known. Only reads `seen`.
std::vector<Portrait> expand(std::span<const Portrait> slice, const std::vector<Portrait>& gens,
                             const PortraitSet& seen) {
  std::vector<Portrait> out;
  PortraitSet local;
  for (const auto& x : slice) {
    for (const auto& g : gens) {
      Portrait y = compose(x, g);
      if (seen.contains(y) || local.contains(y)) continue;
      local.insert(y);
      out.push_back(std::move(y));
    }
  }
  return out;
}

}  // namespace

GrowthTable ball_sizes(GroupTag tag, int level, int r_max, const BallOptions& options) {
  if (level < 1) throw std::invalid_argument("ball_sizes needs level >= 1");
  if (r_max < 0) throw std::invalid_argument("ball_sizes needs r_max >= 0");

  std::vector<Portrait> gens;
  gens.reserve(options.generators.size());
  for (auto g : options.generators) gens.push_back(generator_portrait(g, level, tag));

  GrowthTable table{tag, level, {1}, r_max, false};
  PortraitSet seen;
  std::vector<Portrait> frontier{Portrait::identity(tag, level)};
  seen.insert(frontier.front());

  const unsigned threads = std::max(1u, options.threads);
  for (int r = 1; r <= r_max; ++r) {
    std::vector<std::vector<Portrait>> parts(threads);
    if (threads == 1 || frontier.size() < 64) {
      parts[0] = expand(frontier, gens, seen);
    } else {
      std::vector<std::thread> pool;
      const std::size_t chunk = (frontier.size() + threads - 1) / threads;
      for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = std::min(frontier.size(), t * chunk);
        const std::size_t hi = std::min(frontier.size(), lo + chunk);
        pool.emplace_back([&, t, lo, hi] {
          parts[t] = expand(std::span<const Portrait>(frontier).subspan(lo, hi - lo), gens, seen);
        });
      }
      for (auto& th : pool) th.join();
    }

    std::vector<Portrait> next;
    for (auto& part : parts)
      for (auto& y : part)
        if (seen.insert(y).second) next.push_back(std::move(y));

    if (seen.size() > options.element_cap) {
      table.truncated = true;
      break;
    }
    table.counts.push_back(seen.size());
    frontier = std::move(next);
  }
  return table;
}

void write_growth_csv(std::ostream& out, const GrowthTable& table, bool header) {
  if (header) out << "level,r,count\n";
  for (std::size_t r = 0; r < table.counts.size(); ++r)
    out << table.level << ',' << r << ',' << table.counts[r] << '\n';
}

std::vector<GrowthTable> read_growth_csv(std::istream& in, GroupTag tag) {
  std::string line;
  if (!std::getline(in, line) || line != "level,r,count")
    throw std::invalid_argument("growth CSV must start with header 'level,r,count'");
  std::vector<GrowthTable> tables;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b, c;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c))
      throw std::invalid_argument("malformed growth CSV row: " + line);
    const int level = std::stoi(a);
    const int r = std::stoi(b);
    const std::uint64_t count = std::stoull(c);
    if (tables.empty() || tables.back().level != level) tables.push_back({tag, level, {}, 0, false});
    auto& t = tables.back();
    if (r != static_cast<int>(t.counts.size()))
      throw std::invalid_argument("growth CSV radii must be consecutive from 0");
    t.counts.push_back(count);
    t.requested_radius = r;
  }
  return tables;
}

}  // namespace ivdiff::group
