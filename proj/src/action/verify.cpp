#include "ivdiff/action/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <json.hpp>
#include <set>
#include <stdexcept>
#include <thread>

namespace ivdiff::action {

using geometry::Certified;
using geometry::Modulus;
using group::Letter;
using group::SignedGenerator;
using group::Word;

namespace {

constexpr std::size_t chunk_size = 64;

std::mt19937_64 chunk_rng(std::uint64_t seed, std::uint64_t stream, std::size_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(chunk),
                    static_cast<std::uint32_t>(chunk >> 32)};
  return std::mt19937_64(seq);
}

// Runs body(chunk, begin, end) over fixed chunks; results are combined by the
// caller in chunk order, so the outcome does not depend on scheduling.
template <class Body>
void for_chunks(std::size_t total, int threads, Body body) {
  const std::size_t chunks = (total + chunk_size - 1) / chunk_size;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < chunks; c = next++)
      body(c, c * chunk_size, std::min(total, (c + 1) * chunk_size));
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(chunks)));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

double derivative_at(const Embedding& emb, const group::Portrait& p, const PiecePoint& x) {
  return emb.apply(p, x).derivative;
}

bool under(const IntervalIndex& root, const IntervalIndex& idx) {
  return idx.size() >= root.size() && std::equal(root.begin(), root.end(), idx.begin());
}

std::string generator_name(SignedGenerator g) { return std::string(1, group::to_char(g)); }

}  // namespace

std::int64_t random_index_entry(std::mt19937_64& rng) {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (u < 0.5) return std::uniform_int_distribution<std::int64_t>(-3, 3)(rng);
  if (u < 0.8) return std::uniform_int_distribution<std::int64_t>(-60, 60)(rng);
  const double mag = std::pow(10.0, std::uniform_real_distribution<double>(0.0, 6.0)(rng));
  const auto l = static_cast<std::int64_t>(mag);
  return std::uniform_int_distribution<int>(0, 1)(rng) ? l : -l;
}

Word random_word(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<int> pick(0, 7);
  std::vector<SignedGenerator> letters(len(rng));
  for (auto& g : letters) g = group::signed_generators()[static_cast<std::size_t>(pick(rng))];
  return Word(group::GroupTag::H, std::move(letters));
}

PointSampler::PointSampler(const Embedding& emb, IntervalIndex root) : emb_(emb), root_(std::move(root)) {
  if (root_.size() > static_cast<std::size_t>(emb.depth())) throw std::invalid_argument("sampler root too deep");
}

PiecePoint PointSampler::operator()(std::mt19937_64& rng) const {
  const auto n = static_cast<std::size_t>(emb_.depth());
  const std::size_t r = root_.size();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  PieceLocator piece{PieceKind::I_leaf, root_};
  const std::size_t first_gap = std::max<std::size_t>(r, 1);
  if (first_gap < n && unit(rng) < 0.5) {
    piece.kind = PieceKind::J_gap;
    const std::size_t depth = std::uniform_int_distribution<std::size_t>(first_gap, n - 1)(rng);
    while (piece.index.size() < depth) piece.index.push_back(random_index_entry(rng));
  } else {
    while (piece.index.size() < n) piece.index.push_back(random_index_entry(rng));
  }
  const double len = emb_.piece_length(piece);
  const double pick = unit(rng);
  double frac = unit(rng);
  const double near = std::pow(10.0, -std::uniform_real_distribution<double>(1.0, 14.0)(rng));
  if (pick < 0.15) frac = near;
  else if (pick < 0.3) frac = 1.0 - near;
  return {std::move(piece), std::min(frac * len, std::nextafter(len, 0.0)), 0.0};
}

NormEstimate sample_norm(const Embedding& emb, const Word& w, const Modulus& sigma, std::size_t rounds,
                         std::uint64_t seed, int threads, IntervalIndex root) {
  const group::Portrait p = emb.portrait(w);
  const PointSampler sampler(emb, root);
  const double T = emb.total_length();
  const double range = emb.system().length_I(root).value;
  const std::size_t chunks = (rounds + chunk_size - 1) / chunk_size;
  std::vector<NormEstimate> parts(chunks);

  for_chunks(rounds, threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
    auto rng = chunk_rng(seed, 1, c);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    NormEstimate& out = parts[c];
    auto record = [&](double fx, double fy, double dist) {
      if (!(dist > 0.0)) return;
      const double diff = std::fabs(fx - fy);
      out.norm = std::max(out.norm, diff / sigma(dist));
      out.rescaled_norm = std::max(out.rescaled_norm, diff / sigma(dist / T));
      ++out.pairs;
    };
    for (std::size_t i = begin; i < end; ++i) {
      const PiecePoint x = sampler(rng);
      const double fx = derivative_at(emb, p, x);
      const double len = emb.piece_length(x.piece);

      // Same piece, relative scale 10^-U(0,12).
      const double h = len * std::pow(10.0, -12.0 * unit(rng));
      PiecePoint y = x;
      y.local = x.local + h <= len ? x.local + h : std::max(0.0, x.local - h);
      record(fx, derivative_at(emb, p, y), std::fabs(y.local - x.local));

      // Piece endpoints, where the derivative is 1 for the Yoccoz family.
      PiecePoint ends = x;
      ends.local = 0.0;
      record(fx, derivative_at(emb, p, ends), x.local);
      ends.local = len;
      record(fx, derivative_at(emb, p, ends), len - x.local);

      // Across pieces: log-uniform distance between len/100 and the range.
      const double lo = std::log10(std::max(len * 1e-2, range * 1e-300));
      const double hi = std::log10(range);
      const double H = std::pow(10.0, lo + (hi - lo) * unit(rng));
      const auto q = emb.advance(x, H);
      if (!q || !under(root, q->piece.index)) {
        ++out.skipped;
        continue;
      }
      record(fx, derivative_at(emb, p, *q), H);
    }
  });

  NormEstimate total;
  for (const auto& part : parts) {
    total.norm = std::max(total.norm, part.norm);
    total.rescaled_norm = std::max(total.rescaled_norm, part.rescaled_norm);
    total.pairs += part.pairs;
    total.skipped += part.skipped;
  }
  return total;
}

namespace {

void run_homomorphism(const Embedding& emb, const VerifyOptions& opt, VerifyReport& rep) {
  const PointSampler sampler(emb);
  const std::size_t chunks = (opt.samples + chunk_size - 1) / chunk_size;
  struct Part {
    double abs = 0.0, rel = 0.0;
    std::size_t mismatches = 0;
  };
  std::vector<Part> parts(chunks);
  for_chunks(opt.samples, opt.threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
    auto rng = chunk_rng(opt.seed, 2, c);
    for (std::size_t i = begin; i < end; ++i) {
      const Word w1 = random_word(rng, 1, opt.max_word_length);
      const Word w2 = random_word(rng, 1, opt.max_word_length);
      const PiecePoint x = sampler(rng);
      const Jet joint = emb.apply_word(w1 * w2, x);
      const Jet split = emb.apply_word(w1, emb.apply_word(w2, x).point);
      const Jet letters = emb.apply_letters(w1 * w2, x);
      Part& part = parts[c];
      if (!(joint.point.piece == split.point.piece) || !(joint.point.piece == letters.point.piece)) {
        ++part.mismatches;
        continue;
      }
      const double diff = std::max(std::fabs(joint.point.local - split.point.local),
                                   std::fabs(joint.point.local - letters.point.local));
      part.abs = std::max(part.abs, diff);
      const double len = emb.piece_length(joint.point.piece);
      if (len > 0.0) part.rel = std::max(part.rel, diff / len);
    }
  });
  rep.ran_homomorphism = true;
  rep.homomorphism_samples = opt.samples;
  for (const auto& part : parts) {
    rep.homomorphism_residual = std::max(rep.homomorphism_residual, part.abs);
    rep.homomorphism_relative = std::max(rep.homomorphism_relative, part.rel);
    rep.homomorphism_index_mismatches += part.mismatches;
  }
}

void run_tangency(const Embedding& emb, const VerifyOptions& opt, VerifyReport& rep) {
  const PointSampler sampler(emb);
  auto rng = chunk_rng(opt.seed, 3, 0);
  constexpr double delta = 1e-8;
  for (std::size_t i = 0; i < opt.samples; ++i) {
    PiecePoint x = sampler(rng);
    const double len = emb.piece_length(x.piece);
    for (const auto g : group::signed_generators()) {
      for (const double local : {0.0, delta * len, (1.0 - delta) * len, len}) {
        x.local = local;
        rep.tangency_max_deviation =
            std::max(rep.tangency_max_deviation, std::fabs(emb.apply(emb.generator(g), x).derivative - 1.0));
        ++rep.tangency_samples;
      }
    }
  }
  rep.ran_tangency = true;
}

void run_sigma(const Embedding& emb, const VerifyOptions& opt, VerifyReport& rep) {
  std::uint64_t stream = 0;
  for (const auto g : group::signed_generators()) {
    const Word w(group::GroupTag::H, {g});
    auto est = sample_norm(emb, w, opt.sigma, opt.samples, opt.seed + 1000 * ++stream, opt.threads);
    if (!g.inverse) rep.sigma_norm_max = std::max(rep.sigma_norm_max, est.norm);
    rep.sigma_norms.push_back({generator_name(g), est});
  }
  rep.ran_sigma_norm = true;
}

void run_holder(const ActionConfig& cfg, const VerifyOptions& opt, VerifyReport& rep) {
  const Modulus holder = Modulus::holder(opt.alpha);
  for (int level = 1; level <= cfg.depth; ++level) {
    ActionConfig sub = cfg;
    sub.depth = level;
    const Embedding emb(sub);
    const Word b(group::GroupTag::H, {{Letter::b, false}});
    rep.holder.push_back({level, "b", sample_norm(emb, b, holder, opt.samples, opt.seed + 77, opt.threads)});
  }
  rep.ran_holder = true;
  rep.alpha = opt.alpha;
}

void run_cagoncito(const Embedding& emb, const VerifyOptions& opt, VerifyReport& rep) {
  const Modulus holder = Modulus::holder(opt.alpha);
  const std::int64_t roots[] = {-40, -2, -1, 0, 1, 2, 7};
  std::uint64_t stream = 10;
  for (const auto g : group::signed_generators()) {
    if (g.letter == Letter::a) continue;  // a moves every depth-1 piece
    const Word w(group::GroupTag::H, {g});
    const group::Portrait p = emb.portrait(w);
    for (const std::int64_t l : roots) {
      const IntervalIndex root{l};
      const double M_est = sample_norm(emb, w, holder, opt.samples, opt.seed + ++stream, opt.threads, root).norm;
      const double len = emb.system().length_I(root).value;
      const double bound = M_est * std::pow(len, 1.0 + opt.alpha);
      const PointSampler sampler(emb, root);
      auto rng = chunk_rng(opt.seed, 100 + stream, 0);
      for (std::size_t i = 0; i < opt.samples; ++i) {
        const PiecePoint x = sampler(rng);
        const PiecePoint hx = emb.apply(p, x).point;
        if (!under(root, hx.piece.index)) throw std::logic_error("generator does not fix the sampled piece");
        const Certified ox = emb.offset_in(x, 1), ohx = emb.offset_in(hx, 1);
        const double disp = std::fabs(ohx.value - ox.value);
        const double slack = ox.err + ohx.err;
        ++rep.cagoncito_samples;
        if (disp > bound + slack) ++rep.cagoncito_violations;
        if (bound > 0.0) rep.cagoncito_worst_ratio = std::max(rep.cagoncito_worst_ratio, disp / bound);
      }
    }
  }
  rep.ran_cagoncito = true;
}

nlohmann::json estimate_json(const NormEstimate& e) {
  return {{"norm", e.norm}, {"rescaled_norm", e.rescaled_norm}, {"pairs", e.pairs}, {"skipped", e.skipped}};
}

}  // namespace

VerifyReport verify_suite(const ActionConfig& cfg, const VerifyOptions& opt) {
  static const std::set<std::string> known{"homomorphism", "tangency", "sigma_norm", "holder_diag", "cagoncito"};
  for (const auto& c : opt.checks)
    if (!known.count(c)) throw std::invalid_argument("unknown check '" + c + "'");
  auto wants = [&](const char* name) { return std::find(opt.checks.begin(), opt.checks.end(), name) != opt.checks.end(); };

  const Embedding emb(cfg);
  VerifyReport rep;
  rep.depth = cfg.depth;
  rep.family = std::string(geometry::to_string(cfg.family));
  rep.geometry = cfg.geometry.to_json();
  rep.M = opt.M;
  rep.sigma = opt.sigma.name();
  rep.seed = opt.seed;
  if (wants("homomorphism")) run_homomorphism(emb, opt, rep);
  if (wants("tangency")) run_tangency(emb, opt, rep);
  if (wants("sigma_norm")) run_sigma(emb, opt, rep);
  if (wants("holder_diag")) run_holder(cfg, opt, rep);
  if (wants("cagoncito")) run_cagoncito(emb, opt, rep);
  return rep;
}

std::string VerifyReport::to_json() const {
  nlohmann::json j;
  j["depth"] = depth;
  j["family"] = family;
  j["geometry"] = nlohmann::json::parse(geometry);
  j["M"] = M;
  j["sigma"] = sigma;
  j["seed"] = seed;
  if (ran_homomorphism)
    j["homomorphism"] = {{"residual", homomorphism_residual},
                         {"relative_residual", homomorphism_relative},
                         {"samples", homomorphism_samples},
                         {"index_mismatches", homomorphism_index_mismatches}};
  if (ran_tangency) j["tangency"] = {{"max_deviation", tangency_max_deviation}, {"samples", tangency_samples}};
  if (ran_sigma_norm) {
    nlohmann::json per = nlohmann::json::object();
    for (const auto& g : sigma_norms) per[g.generator] = estimate_json(g.estimate);
    j["sigma_norm"] = {{"max_over_generators", sigma_norm_max}, {"per_generator", per}};
  }
  if (ran_holder) {
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& h : holder) {
      auto e = estimate_json(h.estimate);
      e["level"] = h.level;
      e["generator"] = h.generator;
      levels.push_back(e);
    }
    j["holder_diag"] = {{"alpha", alpha}, {"levels", levels}};
  }
  if (ran_cagoncito)
    j["cagoncito"] = {{"samples", cagoncito_samples},
                      {"violations", cagoncito_violations},
                      {"worst_ratio", cagoncito_worst_ratio}};
  return j.dump(2);
}

}  // namespace ivdiff::action
