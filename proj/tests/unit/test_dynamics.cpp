#include <random>

#include "doctest.h"
#include "ivdiff/dynamics/corpus.hpp"
#include "ivdiff/dynamics/wreath.hpp"

using namespace ivdiff::dynamics;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

PLHomeo knot(const Rational& x, const Rational& y) { return PLHomeo({q(0), x, q(1)}, {q(0), y, q(1)}); }

// Random PL self-map of [0,1] with k interior knots on a 1/64 grid.
PLHomeo random_pl(std::mt19937_64& rng, int k) {
  std::vector<int> a, b;
  std::uniform_int_distribution<int> d(1, 63);
  while (static_cast<int>(a.size()) < k) {
    int x = d(rng);
    if (std::find(a.begin(), a.end(), x) == a.end()) a.push_back(x);
  }
  while (static_cast<int>(b.size()) < k) {
    int y = d(rng);
    if (std::find(b.begin(), b.end(), y) == b.end()) b.push_back(y);
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<Rational> xs{q(0)}, ys{q(0)};
  for (int i = 0; i < k; ++i) {
    xs.push_back(q(a[i], 64));
    ys.push_back(q(b[i], 64));
  }
  xs.push_back(q(1));
  ys.push_back(q(1));
  return PLHomeo(xs, ys);
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("rational text") {
  CHECK(parse_rational("6/4") == q(3, 2));
  CHECK(parse_rational("-7") == q(-7));
  CHECK(format_rational(q(3)) == "3/1");
  CHECK(format_rational(q(-1, 3)) == "-1/3");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("construction rejects bad knots and drops collinear ones") {
  CHECK_THROWS_AS(PLHomeo({q(0), q(0)}, {q(0), q(1)}), std::invalid_argument);
  CHECK_THROWS_AS(PLHomeo({q(0), q(1, 2), q(1)}, {q(0), q(1), q(1, 2)}), std::invalid_argument);
  PLHomeo id({q(0), q(1, 3), q(1)}, {q(0), q(1, 3), q(1)});
  CHECK(id.xs().size() == 2);
  CHECK(id.is_identity());
}

TEST_CASE("compose examples") {
  PLHomeo f = knot(q(1, 2), q(1, 4));
  PLHomeo g = knot(q(1, 2), q(3, 4));
  PLHomeo id = PLHomeo::identity(q(0), q(1));
  CHECK(pl_compose(f, id) == f);
  CHECK(pl_compose(f, pl_invert(f)).is_identity());
  // Hand composition: g⁻¹(1/2) = 1/3, f(g(1/3)) = 1/4, f(g(1/2)) = f(3/4) = 5/8.
  PLHomeo fg = pl_compose(f, g);
  CHECK(fg.xs() == std::vector<Rational>{q(0), q(1, 3), q(1, 2), q(1)});
  CHECK(fg.ys() == std::vector<Rational>{q(0), q(1, 4), q(5, 8), q(1)});
  CHECK_THROWS_AS(pl_compose(f, PLHomeo::identity(q(2), q(3))), std::invalid_argument);
  CHECK_THROWS_AS(f(q(3, 2)), std::domain_error);
}

TEST_CASE("invert examples") {
  PLHomeo id = PLHomeo::identity(q(0), q(1));
  CHECK(pl_invert(id) == id);
  PLHomeo inv = pl_invert(knot(q(1, 2), q(1, 4)));
  CHECK(inv.xs()[1] == q(1, 4));
  CHECK(inv.ys()[1] == q(1, 2));
  PLHomeo f = knot(q(2, 7), q(5, 9));
  CHECK(pl_invert(pl_invert(f)) == f);
}

TEST_CASE("algebra properties on random maps") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    PLHomeo f = random_pl(rng, 1 + t % 5), g = random_pl(rng, 1 + t % 4), h = random_pl(rng, 2);
    CHECK(pl_compose(f, pl_invert(f)).is_identity());
    CHECK(pl_compose(pl_invert(f), f).is_identity());
    CHECK(pl_compose(pl_compose(f, g), h) == pl_compose(f, pl_compose(g, h)));
    CHECK(pl_invert(pl_compose(f, g)) == pl_compose(pl_invert(g), pl_invert(f)));
    Rational x = q(static_cast<long>(rng() % 97), 97);
    CHECK(pl_compose(f, g)(x) == f(g(x)));
    CHECK(f.preimage(f(x)) == x);
    CHECK(PLHomeo::from_tsv(f.to_tsv()) == f);
    CHECK(pl_reflect(pl_reflect(f)) == f);
    for (const auto& c : fixed_intervals(f)) {
      CHECK(f(c.lo) == c.lo);
      CHECK(f(c.hi) == c.hi);
      CHECK(f((c.lo + c.hi) / 2) == (c.lo + c.hi) / 2);
    }
    // Between consecutive components f - id has constant nonzero sign.
    auto comps = fixed_intervals(f);
    for (std::size_t i = 0; i + 1 < comps.size(); ++i) {
      Rational m = (comps[i].hi + comps[i + 1].lo) / 2;
      CHECK(f(m) != m);
    }
  }
}

TEST_CASE("fixed interval examples") {
  auto id = fixed_intervals(PLHomeo::identity(q(0), q(1)));
  REQUIRE(id.size() == 1);
  CHECK(id[0].lo == q(0));
  CHECK(id[0].hi == q(1));

  auto half = fixed_intervals(knot(q(1, 2), q(1, 4)));
  REQUIRE(half.size() == 2);
  CHECK(half[0].is_point());
  CHECK(half[0].lo == q(0));
  CHECK(half[1].lo == q(1));

  PLHomeo flat({q(0), q(1, 8), q(1, 4), q(1, 2), q(3, 4), q(1)},
               {q(0), q(1, 16), q(1, 4), q(1, 2), q(7, 8), q(1)});
  auto comps = fixed_intervals(flat);
  REQUIRE(comps.size() == 3);
  CHECK(comps[0].is_point());
  CHECK(comps[1].lo == q(1, 4));
  CHECK(comps[1].hi == q(1, 2));
  CHECK(comps[2].lo == q(1));

  // A crossing of the diagonal inside a segment.
  PLHomeo cross({q(0), q(1, 4), q(3, 4), q(1)}, {q(0), q(1, 8), q(7, 8), q(1)});
  auto c = fixed_intervals(cross);
  REQUIRE(c.size() == 3);
  CHECK(c[1].lo == q(1, 2));
}

TEST_CASE("TSV format") {
  PLHomeo f = PLHomeo::from_tsv("0/1\t0/1\n1/2\t1/4\n1/1\t1/1\n");
  CHECK(f == knot(q(1, 2), q(1, 4)));
  CHECK(f.to_tsv() == "0/1\t0/1\n1/2\t1/4\n1/1\t1/1\n");
  CHECK_THROWS_AS(PLHomeo::from_tsv("0\t0\n1/2 1/4\n1\t1\n"), std::invalid_argument);
  CHECK_THROWS_AS(PLHomeo::from_tsv("0\t0\n1/2\t1/4\n1/4\t1/2\n"), std::invalid_argument);
}

TEST_CASE("crossed corpus") {
  for (const auto& c : crossed_corpus()) {
    INFO(c.name);
    auto w = detect_crossed(c.f, c.g);
    REQUIRE(w.has_value() == c.expected.has_value());
    CHECK(detect_crossed(c.g, c.f).has_value() == w.has_value());
    if (w) {
      CHECK(w->u == c.expected->u);
      CHECK(w->v == c.expected->v);
      CHECK(w->fixer == c.expected->fixer);
      CHECK(w->mover == c.expected->mover);
      CHECK(w->side == c.expected->side);
      CHECK(witness_problem(c.f, c.g, *w).empty());
    }
  }
}

TEST_CASE("ping-pong certificate on the crossed case") {
  const auto c = crossed_corpus()[2];
  PingPongCert cert = pingpong_certificate(c.f, c.g, *c.expected);
  CHECK(cert.verified);
  CHECK(verify_pingpong(cert));
  // g∘f² touches the diagonal at 7/12 (g∘f²(1/2) = 13/24, g∘f²(3/4) = 5/6).
  CHECK(cert.n == 2);
  CHECK(cert.X.hi == q(7, 12));
  CHECK(cert.m >= 1);
  CHECK(cert.m <= 8);
  CHECK(cert.h2 == pl_compose(c.g, pl_power(c.f, cert.n)));
  CHECK(cert.X2.lo == q(1, 2));

  // Tampering with the stored sets breaks re-verification.
  PingPongCert bad = cert;
  bad.X1.hi = bad.X2.lo;
  CHECK_FALSE(verify_pingpong(bad));
  bad = cert;
  bad.h1 = PLHomeo::identity(q(0), q(1));
  CHECK_FALSE(verify_pingpong(bad));
}

TEST_CASE("ping-pong handles right-side witnesses and expanding fixers") {
  const auto c = crossed_corpus()[2];
  // Conjugating by x ↦ 1 − x turns the left witness into a right one, and
  // replacing f by f⁻¹ makes the fixer expanding.
  auto mirror = [](const PLHomeo& h) {
    std::vector<Rational> xs, ys;
    for (std::size_t i = h.xs().size(); i-- > 0;) {
      xs.push_back(1 - h.xs()[i]);
      ys.push_back(1 - h.ys()[i]);
    }
    return PLHomeo(xs, ys);
  };
  PLHomeo f = pl_invert(mirror(c.f)), g = mirror(c.g);
  auto w = detect_crossed(f, g);
  REQUIRE(w);
  CHECK(w->side == Side::right);
  PingPongCert cert = pingpong_certificate(f, g, *w);
  CHECK(cert.reflected);
  CHECK(cert.fixer_inverted);
  CHECK(cert.verified);
}

TEST_CASE("ping-pong rejects an invalid witness") {
  PLHomeo id = PLHomeo::identity(q(0), q(1));
  const auto c = crossed_corpus()[2];
  CHECK_THROWS_AS(pingpong_certificate(id, c.g, *c.expected), std::invalid_argument);
  CrossWitness w = *c.expected;
  w.v = q(7, 8);
  CHECK_THROWS_AS(pingpong_certificate(c.f, c.g, w), std::invalid_argument);
}

TEST_CASE("ping-pong on random crossed pairs") {
  std::mt19937_64 rng(5);
  int found = 0;
  for (int t = 0; t < 300 && found < 40; ++t) {
    PLHomeo f = random_pl(rng, 3), g = random_pl(rng, 3);
    auto w = detect_crossed(f, g);
    if (!w) continue;
    ++found;
    try {
      PingPongCert cert = pingpong_certificate(f, g, *w, 400);
      CHECK(cert.verified);
    } catch (const SearchCapExceeded& e) {
      FAIL(e.what());
    }
  }
  CHECK(found > 10);
}

TEST_CASE("translation number examples") {
  AtomicMeasure mu;
  for (long i = -10; i <= 10; ++i) mu.atoms.emplace_back(q(i), q(1));
  mu.window = std::make_pair(q(-10), q(10));
  PLHomeo shift({q(-5), q(5)}, {q(-2), q(8)});
  auto t = translation_number(mu, shift, q(0));
  CHECK(t.value == 3);
  CHECK(t.measure_preserved);
  CHECK(translation_number(mu, pl_invert(shift), q(0)).value == -3);

  PLHomeo fix({q(-5), q(0), q(5)}, {q(-4), q(0), q(6)});
  auto z = translation_number(mu, fix, q(0));
  CHECK(z.value == 0);
  CHECK_FALSE(z.measure_preserved);
  CHECK_THROWS_AS(translation_number(mu, shift, q(9)), std::domain_error);

  AtomicMeasure back = AtomicMeasure::from_json(mu.to_json());
  CHECK(back.atoms == mu.atoms);
  CHECK(back.window == mu.window);
  CHECK(AtomicMeasure::from_json(R"({"atoms":[[0,1],["1/2","3/2"]]})").atoms.size() == 2);
  CHECK_THROWS_AS(AtomicMeasure::from_json(R"({"atoms":[[0,-1]]})"), std::invalid_argument);
  CHECK_THROWS_AS(AtomicMeasure::from_json(R"({"atoms":[[1,1],[0,1]]})"), std::invalid_argument);
  CHECK_THROWS_AS(AtomicMeasure::from_json(R"({"atoms":[[0.5,1]]})"), std::invalid_argument);
}

TEST_CASE("translation number additivity") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    auto p = random_preserving_pair(rng);
    auto tg = translation_number(p.mu, p.g, p.x0);
    auto th = translation_number(p.mu, p.h, p.x0);
    auto tgh = translation_number(p.mu, pl_compose(p.g, p.h), p.x0);
    CHECK(tg.measure_preserved);
    CHECK(th.measure_preserved);
    CHECK(tgh.value == tg.value + th.value);
    // Independent of the base point.
    CHECK(translation_number(p.mu, p.g, p.x0 + 1).value == tg.value);
  }
}

TEST_CASE("wreath pair") {
  WreathPair p = wreath_pair(q(1, 2), q(1, 2));
  auto fx = fixed_intervals(p.f);
  REQUIRE(fx.size() == 2);
  CHECK(fx[0].lo == 0);
  CHECK(fx[1].lo == 1);
  Rational x = p.x0;
  for (int n = 0; n < 12; ++n, x = p.f(x)) CHECK(p.g(x) == x);
  auto gx = fixed_intervals(p.g);
  REQUIRE(gx.size() == 2);
  CHECK(gx[0].hi == p.f(p.x0));
  CHECK(gx[1].lo == p.x0);
  CHECK_FALSE(detect_crossed(p.f, p.g).has_value());
  CHECK_THROWS_AS(wreath_pair(q(1), q(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(wreath_pair(q(1, 2), q(3, 2)), std::invalid_argument);
}

TEST_CASE("wreath word separation") {
  CHECK(positive_words(3).size() == 14);
  WreathPair p = wreath_pair(q(1, 2), q(1, 2));
  CHECK(word_apply(p, "fg", q(3, 8)) == p.f(p.g(q(3, 8))));
  CHECK(word_map(p, "fg") == pl_compose(p.f, p.g));
  CHECK(word_preimage(p, "fg", word_apply(p, "fg", q(1, 3))) == q(1, 3));
  auto r = wreath_separation(p, 4);
  CHECK(r.words == 30);
  CHECK(r.pairs == 435);
  CHECK(r.hypothesis_ok);
  CHECK(r.N == std::vector<long>{0});
  CHECK(r.all_separated());
}

}  // TEST_SUITE
