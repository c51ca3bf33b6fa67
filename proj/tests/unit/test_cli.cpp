#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ivdiff/cli/cli.hpp"
#include "ivdiff/dynamics/crossed.hpp"
#include "ivdiff/dynamics/corpus.hpp"
#include "ivdiff/group/growth.hpp"
#include "ivdiff/group/portrait_json.hpp"

namespace fs = std::filesystem;
using namespace ivdiff;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "ivdiff");
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("ivdiff_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path(const std::string& name) { return (scratch() / name).string(); }

void write(const std::string& name, const std::string& text) { std::ofstream(path(name), std::ios::binary) << text; }

std::string slurp(const std::string& name) {
  std::ifstream in(path(name), std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("parse_config defaults and rejections") {
  auto c = cli::parse_config_text(R"({"geometry": {"variant": "navas", "k": [4, 5, 6]}})");
  CHECK(c.tol == 1e-12);
  CHECK(c.seed == 0);
  CHECK(c.action.depth == 3);
  CHECK(c.action.geometry.n_max() == 3);

  auto planned = cli::parse_config_text(R"({"depth": 2, "M": 1})");
  CHECK(std::get<geometry::NavasParams>(planned.action.geometry.variant).k ==
        std::vector<std::int64_t>{15523, 115297});

  CHECK_THROWS_AS(cli::parse_config_text(R"({"geometry": {"variant": "affine", "ratio": "3/2"}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_config_text(R"({"geometry": {"variant": "navas", "k": [5, 5, 6]}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_config_text(R"({"geometry": {"variant": "navas", "k": [3, 5]}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_config_text(R"({"geometry": {"variant": "navas", "k": [4]}, "depth": 2})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_config_text(R"({"colour": 1})"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_config_text("{"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_config_text(R"({"tol": -1})"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_config(path("missing.json")), std::runtime_error);

  write("cfg.json", R"({"family": "affine", "geometry": {"variant": "affine", "ratio": "1/2"}, "seed": 9})");
  auto a = cli::parse_config(path("cfg.json"));
  CHECK(a.action.family == geometry::Family::affine);
  CHECK(a.seed == 9);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::usage);
  CHECK(run({"--help"}).code == cli::ok);
  CHECK(run({"embed", "verify", "--help"}).code == cli::ok);
  CHECK(run({"embed", "verify", "--help"}).out.find("--checks") != std::string::npos);
  CHECK(run({"growth", "--bogus"}).code == cli::usage);
  CHECK(run({"element", "eval", "--word", "xyz", "--prefix", "(1)"}).code == cli::usage);
  CHECK(run({"embed", "eval", "-w", "a", "--x", "5", "--depth", "1", "--unit"}).code == cli::usage);
  CHECK(run({"embed", "verify", "--depth", "1", "--checks", "nonsense"}).code == cli::usage);
  CHECK(run({"dyn", "tau", "--measure", path("none.json"), "--map", path("none.tsv"), "--x0", "0"}).code ==
        cli::usage);
  CHECK(run({"growth", "--level", "1", "--radius", "1", "--out", path("no/such/dir/x.csv")}).code == cli::failure);
}

TEST_CASE("growth CSV and round trip") {
  auto r = run({"growth", "--group", "H", "--level", "3", "--radius", "4", "--out", path("g.csv")});
  REQUIRE(r.code == 0);
  std::ifstream in(path("g.csv"));
  auto tables = group::read_growth_csv(in, group::GroupTag::H);
  REQUIRE(tables.size() == 1);
  CHECK(tables[0].counts[1] == 9);
  std::ostringstream again;
  group::write_growth_csv(again, tables[0]);
  CHECK(again.str() == slurp("g.csv"));

  auto tower = run({"growth", "--level", "3", "--radius", "2", "--tower"});
  std::istringstream tin(tower.out);
  CHECK(group::read_growth_csv(tin, group::GroupTag::H).size() == 3);
}

TEST_CASE("element subcommands") {
  CHECK(run({"element", "order", "--group", "G", "--word", "AB", "--depth", "8"}).out == "16\n");
  CHECK(run({"element", "equal", "--word", "b", "--other", "c", "--depth", "2"}).out == "equal\n");
  CHECK(run({"element", "equal", "--word", "b", "--other", "c", "--depth", "3"}).out == "different\n");
  auto e = run({"element", "eval", "--word", "a", "--prefix", "(1,-2,3)"});
  CHECK(e.out == "(2,-2,3)\n");

  REQUIRE(run({"element", "portrait", "--word", "abAcd", "--depth", "4", "--out", path("p.json")}).code == 0);
  auto p = group::portrait_from_json(slurp("p.json"), group::GroupTag::H);
  CHECK(p == group::word_to_portrait(group::Word::parse(group::GroupTag::H, "abAcd"), 4));
  CHECK(group::portrait_to_json(p) + "\n" == slurp("p.json"));
}

TEST_CASE("embed verify sigma norm") {
  auto r = run({"embed", "verify", "--M", "1", "--depth", "2", "--checks", "sigma_norm", "--out", path("r.json")});
  REQUIRE(r.code == 0);
  const std::string text = slurp("r.json");
  auto pos = text.find("\"max_over_generators\": ");
  REQUIRE(pos != std::string::npos);
  double m = std::stod(text.substr(pos + 23));
  CHECK(m > 0.0);
  CHECK(m <= 1.0);
}

TEST_CASE("embed eval, derive, plot, intervals, kn") {
  auto a = run({"embed", "eval", "-w", "a", "--x", "0.3", "--depth", "2", "--unit"});
  REQUIRE(a.code == 0);
  auto back = run({"embed", "eval", "-w", "A", "--x", a.out.substr(0, a.out.size() - 1), "--depth", "2", "--unit"});
  CHECK(std::abs(std::stod(back.out) - 0.3) < 1e-12);
  CHECK(run({"embed", "derive", "-w", "b", "--x", "0.3", "--depth", "2", "--unit"}).code == 0);

  REQUIRE(run({"embed", "plot", "-w", "ab", "--depth", "2", "--unit", "--resolution", "50", "--out", path("plot.tsv")})
              .code == 0);
  const std::string plot = slurp("plot.tsv");
  CHECK(plot.rfind("x\tf\tdf\n", 0) == 0);
  CHECK(std::count(plot.begin(), plot.end(), '\n') == 52);

  REQUIRE(run({"embed", "intervals", "--depth", "2", "--range", "1", "--out", path("iv.tsv")}).code == 0);
  const std::string iv = slurp("iv.tsv");
  CHECK(std::count(iv.begin(), iv.end(), '\n') == 1 + 3 + 9);

  auto kn = run({"embed", "kn", "--M", "1", "-n", "2"});
  CHECK(kn.out.find("15523") != std::string::npos);
  CHECK(kn.out.find("115297") != std::string::npos);
}

TEST_CASE("determinism") {
  std::vector<std::string> v{"embed", "verify", "--depth", "2", "--samples", "200", "--checks",
                             "homomorphism,sigma_norm", "--seed", "17"};
  auto r1 = run(v), r2 = run(v);
  REQUIRE(r1.code == 0);
  CHECK(r1.out == r2.out);
  v.push_back("--threads");
  v.push_back("3");
  CHECK(run(v).out == r1.out);
  v[v.size() - 3] = "18";
  CHECK(run(v).out != r1.out);
  CHECK(run({"growth", "--level", "4", "--radius", "4"}).out == run({"growth", "--level", "4", "--radius", "4"}).out);
}

TEST_CASE("dyn subcommands") {
  std::string atoms = "{\"atoms\": [";
  for (int i = -20; i <= 20; ++i) atoms += (i > -20 ? "," : "") + std::string("[") + std::to_string(i) + ",1]";
  atoms += "], \"window\": [-20, 20]}";
  write("m.json", atoms);
  write("shift.tsv", "-10/1\t-7/1\n10/1\t13/1\n");
  auto t = run({"dyn", "tau", "--measure", path("m.json"), "--map", path("shift.tsv"), "--x0", "0"});
  CHECK(t.code == 0);
  CHECK(t.out == "3\n");
  write("bent.tsv", "-10/1\t-9/1\n0/1\t1/2\n10/1\t10/1\n");
  auto w = run({"dyn", "tau", "--measure", path("m.json"), "--map", path("bent.tsv"), "--x0", "0"});
  CHECK(w.code == 0);
  CHECK(w.err.find("warning") != std::string::npos);

  const auto c = dynamics::crossed_corpus()[2];
  write("f.tsv", c.f.to_tsv());
  write("g.tsv", c.g.to_tsv());
  CHECK(dynamics::PLHomeo::from_tsv(slurp("f.tsv")) == c.f);
  auto cr = run({"dyn", "crossed", "--f", path("f.tsv"), "--g", path("g.tsv")});
  CHECK(cr.out.find("\"u\": \"1/4\"") != std::string::npos);
  auto pp = run({"dyn", "pingpong", "--f", path("f.tsv"), "--g", path("g.tsv")});
  CHECK(pp.code == 0);
  CHECK(pp.out.find("\"verified\": true") != std::string::npos);
  write("id.tsv", "0/1\t0/1\n1/1\t1/1\n");
  CHECK(run({"dyn", "crossed", "--f", path("f.tsv"), "--g", path("id.tsv")}).out == "none\n");
  CHECK(run({"dyn", "pingpong", "--f", path("f.tsv"), "--g", path("id.tsv")}).code == cli::failure);

  auto wr = run({"dyn", "wreath", "--length", "4"});
  CHECK(wr.code == 0);
  CHECK(wr.out.find("\"all_separated\": true") != std::string::npos);
  CHECK(run({"dyn", "wreath", "--x0", "3/2"}).code == cli::usage);
}

}  // TEST_SUITE
