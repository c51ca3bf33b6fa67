#include "ivdiff/cli/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ivdiff/action/verify.hpp"
#include "ivdiff/dynamics/crossed.hpp"
#include "ivdiff/dynamics/measure.hpp"
#include "ivdiff/dynamics/wreath.hpp"
#include "ivdiff/geometry/kn_plan.hpp"
#include "ivdiff/group/growth.hpp"
#include "ivdiff/group/portrait_json.hpp"

namespace ivdiff::cli {

namespace {

// The command ran but could not deliver (unwritable output, negative result).
struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Writes to `path`, or to `out` when the path is empty or "-".
template <class Fn>
void emit(const std::string& path, std::ostream& out, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(out);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Failure("cannot write " + path);
  fn(f);
  f.flush();
  if (!f) throw Failure("write failed: " + path);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

group::IntegerPrefix parse_prefix(std::string text) {
  if (!text.empty() && text.front() == '(') return geometry::parse_index(text);
  return geometry::parse_index("(" + text + ")");
}

struct Globals {
  std::uint64_t seed = 0;
  double tol = 1e-12;
  int threads = 1;
};

struct EmbedOptions {
  std::string config;
  double M = 1.0;
  int depth = 3;
  std::string family;
  bool unit = false;
};

void add_embed_options(CLI::App* sub, EmbedOptions& o) {
  sub->add_option("--config", o.config, "JSON config file")->check(CLI::ExistingFile);
  sub->add_option("--M", o.M, "sigma-norm bound used to plan k_n");
  sub->add_option("--depth", o.depth, "nesting depth of the action");
  sub->add_option("--family", o.family, "equivariant family: yoccoz or affine");
  sub->add_flag("--unit", o.unit, "rescale the ambient interval to [0, 1]");
}

// Explicit flags override the config file; the global flags override both.
CommandConfig resolve(const EmbedOptions& o, const Globals& g, const CLI::App& root, const CLI::App& sub) {
  CommandConfig c = o.config.empty() ? planned_config(o.M, o.depth) : parse_config(o.config);
  if (!o.config.empty()) {
    if (sub.count("--M")) c.M = o.M;
    if (sub.count("--depth")) c.action.depth = o.depth;
  }
  if (!o.family.empty()) c.action.family = geometry::parse_family(o.family);
  if (o.unit) c.action.normalization = action::Normalization::rescale_to_unit;
  if (root.count("--seed") || o.config.empty()) c.seed = g.seed;
  if (root.count("--tol") || o.config.empty()) c.tol = g.tol;
  if (root.count("--threads") || o.config.empty()) c.threads = g.threads;
  c.action.geometry.tol = c.tol;
  c.action.validate();
  return c;
}

nlohmann::json plan_json(const geometry::KnPlan& plan) {
  nlohmann::json j{{"M", plan.M}, {"k", plan.k}};
  j["conditions"] = nlohmann::json::array();
  for (const auto& level : plan.report) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& c : level) row.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}});
    j["conditions"].push_back(row);
  }
  return j;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tree automorphism groups, interval actions and PL dynamics", "ivdiff"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--tol", g.tol, "numeric tolerance")->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::Range(1, 256));

  // growth
  auto* growth = app.add_subcommand("growth", "ball sizes of a level-n quotient (CSV level,r,count)");
  std::string group_name = "H", out_path;
  int level = 3, radius = 4;
  bool tower = false;
  std::uint64_t cap = 50'000'000;
  growth->add_option("--group", group_name, "G or H");
  growth->add_option("--level", level, "quotient level")->check(CLI::Range(0, group::Portrait::max_depth));
  growth->add_option("--radius", radius, "largest radius")->check(CLI::Range(0, 1000));
  growth->add_flag("--tower", tower, "one table per level 1..level");
  growth->add_option("--cap", cap, "element cap");
  growth->add_option("--out", out_path, "output file (default stdout)");

  // element
  auto* element = app.add_subcommand("element", "word problem in level quotients");
  element->require_subcommand(1);
  std::string word, word2, prefix;
  int depth = 6;
  std::uint64_t order_cap = 1 << 20;
  auto* el_eval = element->add_subcommand("eval", "act on an integer prefix");
  auto* el_portrait = element->add_subcommand("portrait", "portrait JSON");
  auto* el_equal = element->add_subcommand("equal", "compare two words at a level");
  auto* el_order = element->add_subcommand("order", "order at a level");
  for (auto* s : {el_eval, el_portrait, el_equal, el_order}) {
    s->add_option("--group", group_name, "G or H");
    s->add_option("--word,-w", word, "word, uppercase = inverse")->required();
  }
  el_eval->add_option("--prefix", prefix, "prefix such as (1,-2,3)")->required();
  for (auto* s : {el_portrait, el_equal, el_order})
    s->add_option("--depth", depth, "level")->check(CLI::Range(0, group::Portrait::max_depth));
  el_portrait->add_option("--out", out_path, "output file (default stdout)");
  el_equal->add_option("--other", word2, "second word")->required();
  el_order->add_option("--cap", order_cap, "largest order tried");

  // embed
  auto* embed = app.add_subcommand("embed", "the action of H on the interval");
  embed->require_subcommand(1);
  EmbedOptions eo;
  double x = 0.0;
  std::string checks, sigma = "navas_log";
  std::size_t samples = 1000, resolution = 1000, max_word = 6;
  double alpha = 0.5;
  int kn_levels = 5, range = 2;
  auto* em_eval = embed->add_subcommand("eval", "f(x) for a word");
  auto* em_derive = embed->add_subcommand("derive", "f'(x) for a word");
  auto* em_verify = embed->add_subcommand("verify", "sampled checks, JSON report");
  auto* em_kn = embed->add_subcommand("kn", "plan k_n for a sigma-norm bound");
  auto* em_plot = embed->add_subcommand("plot", "TSV x, f(x), f'(x)");
  auto* em_intervals = embed->add_subcommand("intervals", "TSV of interval endpoints");
  for (auto* s : {em_eval, em_derive, em_verify, em_plot, em_intervals}) add_embed_options(s, eo);
  for (auto* s : {em_eval, em_derive, em_plot}) s->add_option("--word,-w", word, "word over a,b,c,d")->required();
  for (auto* s : {em_eval, em_derive}) s->add_option("--x", x, "point")->required();
  em_verify->add_option("--checks", checks, "comma list: homomorphism,tangency,sigma_norm,holder_diag,cagoncito");
  em_verify->add_option("--samples", samples, "samples per check")->check(CLI::PositiveNumber);
  em_verify->add_option("--sigma", sigma, "modulus: navas_log, holder:A, log_eps:E");
  em_verify->add_option("--alpha", alpha, "Hoelder exponent for holder_diag")->check(CLI::Range(0.0, 1.0));
  em_verify->add_option("--max-word-length", max_word, "longest random word")->check(CLI::PositiveNumber);
  em_kn->add_option("--M", eo.M, "sigma-norm bound");
  em_kn->add_option("--levels,-n", kn_levels, "number of levels")->check(CLI::Range(1, 12));
  em_plot->add_option("--resolution", resolution, "number of intervals")->check(CLI::PositiveNumber);
  em_intervals->add_option("--range", range, "index entries in [-range, range]")->check(CLI::Range(0, 50));
  for (auto* s : {em_verify, em_kn, em_plot, em_intervals}) s->add_option("--out", out_path, "output file");

  // dyn
  auto* dyn = app.add_subcommand("dyn", "exact piecewise-linear dynamics");
  dyn->require_subcommand(1);
  std::string f_path, g_path, measure_path, map_path, x0_text = "1/2", contraction_text = "1/2";
  long pp_cap = 256;
  unsigned length = 6;
  auto* dy_crossed = dyn->add_subcommand("crossed", "find a crossing witness");
  auto* dy_pingpong = dyn->add_subcommand("pingpong", "ping-pong certificate from a crossing");
  auto* dy_tau = dyn->add_subcommand("tau", "translation number for an atomic measure");
  auto* dy_wreath = dyn->add_subcommand("wreath", "word separation for the Z wr Z pair");
  for (auto* s : {dy_crossed, dy_pingpong}) {
    s->add_option("--f", f_path, "PL map TSV")->required()->check(CLI::ExistingFile);
    s->add_option("--g", g_path, "PL map TSV")->required()->check(CLI::ExistingFile);
    s->add_option("--out", out_path, "output file");
  }
  dy_pingpong->add_option("--cap", pp_cap, "exponent search cap")->check(CLI::PositiveNumber);
  dy_tau->add_option("--measure", measure_path, "measure JSON")->required()->check(CLI::ExistingFile);
  dy_tau->add_option("--map", map_path, "PL map TSV")->required()->check(CLI::ExistingFile);
  dy_tau->add_option("--x0", x0_text, "base point p/q")->required();
  dy_wreath->add_option("--x0", x0_text, "x0 in (0,1), p/q");
  dy_wreath->add_option("--contraction", contraction_text, "f(x0)/x0 in (0,1), p/q");
  dy_wreath->add_option("--length", length, "longest positive word")->check(CLI::Range(1, 10));
  dy_wreath->add_option("--out", out_path, "output file");

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  if (!args.empty()) args.pop_back();
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    // Help for the deepest subcommand that was named.
    const CLI::App* target = &app;
    while (!target->get_subcommands().empty()) target = target->get_subcommands().front();
    out << target->help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "ivdiff: " << e.what() << "\n";
    return usage;
  }

  try {
    if (*growth) {
      const auto tag = group::parse_group_tag(group_name);
      group::BallOptions opt;
      opt.element_cap = cap;
      opt.threads = static_cast<unsigned>(g.threads);
      std::vector<group::GrowthTable> tables;
      for (int n = tower ? 1 : level; n <= level; ++n) tables.push_back(group::ball_sizes(tag, n, radius, opt));
      emit(out_path, out, [&](std::ostream& o) {
        for (std::size_t i = 0; i < tables.size(); ++i) group::write_growth_csv(o, tables[i], i == 0);
      });
      for (const auto& t : tables)
        if (t.truncated)
          err << "ivdiff: level " << t.level << " stopped at radius " << t.completed_radius() << " (element cap)\n";
      return ok;
    }

    if (*element) {
      const auto tag = group::parse_group_tag(group_name);
      const auto w = group::Word::parse(tag, word);
      if (*el_eval) {
        const auto s = parse_prefix(prefix);
        out << geometry::format_index(group::act_prefix(w, s)) << "\n";
      } else if (*el_portrait) {
        const auto p = group::word_to_portrait(w, depth);
        emit(out_path, out, [&](std::ostream& o) { o << group::portrait_to_json(p) << "\n"; });
      } else if (*el_equal) {
        out << (group::equal_at_level(w, group::Word::parse(tag, word2), depth) ? "equal" : "different") << "\n";
      } else if (*el_order) {
        auto ord = group::order_at_level(w, depth, order_cap);
        if (!ord) {
          out << "none\n";
          return failure;
        }
        out << *ord << "\n";
      }
      return ok;
    }

    if (*embed) {
      if (*em_kn) {
        const auto plan = geometry::kn_plan(eo.M, kn_levels);
        emit(out_path, out, [&](std::ostream& o) { o << plan_json(plan).dump(2) << "\n"; });
        return ok;
      }
      const CLI::App& sub = *embed->get_subcommands().front();
      const CommandConfig cfg = resolve(eo, g, app, sub);
      if (*em_verify) {
        action::VerifyOptions opt;
        if (!checks.empty()) opt.checks = split_commas(checks);
        opt.samples = samples;
        opt.seed = cfg.seed;
        opt.M = cfg.M;
        opt.sigma = geometry::Modulus::parse(sigma);
        opt.alpha = alpha;
        opt.threads = cfg.threads;
        opt.max_word_length = max_word;
        const auto report = action::verify_suite(cfg.action, opt);
        emit(out_path, out, [&](std::ostream& o) { o << report.to_json() << "\n"; });
        return ok;
      }
      action::Embedding emb(cfg.action);
      if (*em_intervals) {
        std::vector<geometry::IntervalIndex> idx;
        std::vector<geometry::IntervalIndex> layer{{}};
        for (int n = 1; n <= cfg.action.depth; ++n) {
          std::vector<geometry::IntervalIndex> next;
          for (const auto& p : layer)
            for (int l = -range; l <= range; ++l) {
              auto q = p;
              q.push_back(l);
              next.push_back(q);
            }
          idx.insert(idx.end(), next.begin(), next.end());
          layer = std::move(next);
        }
        emit(out_path, out, [&](std::ostream& o) { geometry::write_interval_tsv(o, emb.system(), idx); });
        return ok;
      }
      const auto w = group::Word::parse(group::GroupTag::H, word);
      if (*em_plot) {
        emit(out_path, out, [&](std::ostream& o) { action::write_plot_tsv(o, emb, w, resolution); });
      } else if (*em_eval) {
        out << fmt(emb.eval(w, x)) << "\n";
      } else if (*em_derive) {
        out << fmt(emb.derivative(w, x)) << "\n";
      }
      return ok;
    }

    if (*dyn) {
      using namespace dynamics;
      if (*dy_crossed || *dy_pingpong) {
        const PLHomeo f = PLHomeo::from_tsv(read_file(f_path));
        const PLHomeo gm = PLHomeo::from_tsv(read_file(g_path));
        const auto w = detect_crossed(f, gm);
        if (*dy_crossed) {
          emit(out_path, out, [&](std::ostream& o) { o << (w ? witness_to_json(*w) : "none") << "\n"; });
          return ok;
        }
        if (!w) {
          err << "ivdiff: no crossing witness, no certificate\n";
          return failure;
        }
        const auto cert = pingpong_certificate(f, gm, *w, pp_cap);
        emit(out_path, out, [&](std::ostream& o) { o << certificate_to_json(cert) << "\n"; });
        return cert.verified ? ok : failure;
      }
      if (*dy_tau) {
        const auto mu = AtomicMeasure::from_json(read_file(measure_path));
        const auto gm = PLHomeo::from_tsv(read_file(map_path));
        const auto t = translation_number(mu, gm, parse_rational(x0_text));
        if (!t.measure_preserved) err << "ivdiff: warning: map does not preserve the measure (" << t.warning << ")\n";
        out << t.value.get_str() << "\n";
        return ok;
      }
      if (*dy_wreath) {
        const auto pair = wreath_pair(parse_rational(x0_text), parse_rational(contraction_text));
        const auto r = wreath_separation(pair, length);
        emit(out_path, out, [&](std::ostream& o) { o << r.to_json() << "\n"; });
        return r.all_separated() ? ok : failure;
      }
    }
  } catch (const dynamics::SearchCapExceeded& e) {
    err << "ivdiff: " << e.what() << "\n";
    return failure;
  } catch (const Failure& e) {
    err << "ivdiff: " << e.what() << "\n";
    return failure;
  } catch (const std::logic_error& e) {
    err << "ivdiff: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    err << "ivdiff: " << e.what() << "\n";
    return failure;
  }
  return ok;
}

}  // namespace ivdiff::cli
