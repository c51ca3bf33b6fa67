#include "ivdiff/dynamics/corpus.hpp"

namespace ivdiff::dynamics {

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

}  // namespace

std::vector<CrossedCase> crossed_corpus() {
  PLHomeo crossed_f({q(0), q(1, 8), q(1, 4), q(1, 2), q(3, 4), q(7, 8), q(1)},
                    {q(0), q(1, 16), q(1, 4), q(3, 8), q(3, 4), q(13, 16), q(1)});
  PLHomeo shift_quarter({q(0), q(1, 4), q(1)}, {q(0), q(1, 2), q(1)});
  PLHomeo shared_f({q(0), q(1, 4), q(1, 2), q(3, 4), q(1)}, {q(0), q(1, 8), q(1, 2), q(5, 8), q(1)});
  PLHomeo shared_g({q(0), q(1, 4), q(1, 2), q(3, 4), q(1)}, {q(0), q(3, 8), q(1, 2), q(7, 8), q(1)});
  return {
      {"identity", crossed_f, PLHomeo::identity(q(0), q(1)), std::nullopt},
      {"shared_fixed_set", shared_f, shared_g, std::nullopt},
      {"crossed", crossed_f, shift_quarter, CrossWitness{q(1, 4), q(3, 4), Role::f, Role::g, Side::left}},
  };
}

PreservingPair random_preserving_pair(std::mt19937_64& rng) {
  const long W = 60;
  std::uniform_int_distribution<long> period_d(1, 3), mass_d(1, 5), shift_d(-3, 3), x0_d(-5, 5), num_d(1, 15);
  const long period = period_d(rng);
  std::vector<long> masses(static_cast<std::size_t>(period));
  for (auto& m : masses) m = mass_d(rng);

  PreservingPair out{{}, PLHomeo::identity(0, 1), PLHomeo::identity(0, 1), 0};
  for (long i = -W; i <= W; ++i) out.mu.atoms.emplace_back(q(i), q(masses[static_cast<std::size_t>(((i % period) + period) % period)]));
  out.mu.window = std::make_pair(q(-W), q(W));

  auto make = [&](long half) {
    const long s = shift_d(rng) * period;
    std::vector<Rational> xs, ys;
    for (long i = -half; i <= half; ++i) {
      xs.push_back(q(i));
      ys.push_back(q(i + s));
      if (i < half) {
        xs.push_back(q(i) + q(num_d(rng), 16));
        ys.push_back(q(i + s) + q(num_d(rng), 16));
      }
    }
    return PLHomeo(std::move(xs), std::move(ys));
  };
  out.h = make(20);
  out.g = make(40);
  out.x0 = q(x0_d(rng)) + q(num_d(rng) - 1, 16);
  return out;
}

}  // namespace ivdiff::dynamics
