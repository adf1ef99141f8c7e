#include <doctest.h>

#include <cmath>
#include <numeric>

#include "wavespec/error.hpp"
#include "wavespec/harness.hpp"
#include "wavespec/io.hpp"

using namespace wavespec;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.schedule = {{1024, 16, 3}, {4096, 16, 6}};
  c.replicates = 6;
  c.seed = 11;
  c.bootstrap_resamples = 50;
  return c;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("histogram masses sum to one over in-range samples") {
  RandomStream rng(2);
  std::vector<double> v(997);
  for (double& x : v) x = rng.uniform();
  v.push_back(-0.5);
  v.push_back(1.5);
  v.push_back(1.0);
  const auto h = make_histogram(v, 0.0, 1.0, 0.02);
  CHECK(h.bins() == 50);
  CHECK(h.samples == 1000);
  CHECK(h.below == 1);
  CHECK(h.above == 2);
  CHECK(std::accumulate(h.masses.begin(), h.masses.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(h.center(0) == doctest::Approx(0.01));
}

TEST_CASE("mode extraction") {
  SUBCASE("single spike") {
    const auto h = make_histogram(std::vector<double>(100, 0.51), 0.0, 1.0, 0.02);
    const auto r = mode_extract(h, 1);
    REQUIRE(r.modes.size() == 1);
    CHECK(r.modes[0].location == doctest::Approx(0.51).epsilon(1e-12));
    CHECK(r.modes[0].mass == doctest::Approx(1.0));
  }
  SUBCASE("three equal spikes") {
    std::vector<double> v;
    for (double c : {0.21, 0.51, 0.81}) v.insert(v.end(), 50, c);
    const auto r = mode_extract(make_histogram(v, 0.0, 1.0, 0.02), 3);
    REQUIRE(r.complete());
    CHECK(r.local_maxima == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(r.modes[i].location == doctest::Approx(0.21 + 0.3 * i).epsilon(1e-12));
      CHECK(r.modes[i].mass == doctest::Approx(1.0 / 3.0));
    }
  }
  SUBCASE("fewer peaks than requested") {
    const auto r = mode_extract(make_histogram(std::vector<double>(10, 0.3), 0.0, 1.0, 0.02), 3);
    CHECK_FALSE(r.complete());
    CHECK(r.modes.size() == 1);
  }
  SUBCASE("gaussian bumps") {
    RandomStream rng(8);
    std::vector<double> v;
    for (int i = 0; i < 3000; ++i) v.push_back(0.2 + 0.3 * (i % 3) + 0.03 * rng.normal());
    const auto r = mode_extract(make_histogram(v, 0.0, 1.0, 0.02), 3);
    REQUIRE(r.complete());
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(std::abs(r.modes[i].location - (0.2 + 0.3 * i)) < 0.03);
      CHECK(std::abs(r.modes[i].mass - 1.0 / 3.0) < 0.02);
    }
  }
  CHECK_THROWS_AS(mode_extract(Histogram{}, 0), Error);
}

TEST_CASE("quartiles interpolate linearly") {
  const auto q = quartiles({4.0, 1.0, 3.0, 2.0, 5.0});
  CHECK(q.q25 == 2.0);
  CHECK(q.median == 3.0);
  CHECK(q.q75 == 4.0);
  CHECK(quartiles({1.0, 2.0}).median == 1.5);
}

TEST_CASE("convergence trend") {
  const std::vector<double> same = {0.3, 0.4, 0.5, 0.6};
  const auto flat = convergence_trend({same, same, same}, 200, 1);
  CHECK(flat.flat);
  CHECK(flat.non_increasing);
  CHECK_FALSE(flat.strictly_decreasing);
  for (const auto& [lo, hi] : flat.bands) {
    CHECK(lo <= 0.45);
    CHECK(hi >= 0.45);
  }

  RandomStream rng(3);
  std::vector<std::vector<double>> shrinking;
  for (double a : {16.0, 32.0, 64.0}) {
    std::vector<double> ks(200);
    for (double& k : ks) k = std::abs(rng.normal()) / std::log(a);
    shrinking.push_back(ks);
  }
  const auto t = convergence_trend(shrinking, 200, 1);
  CHECK(t.strictly_decreasing);
  CHECK_FALSE(t.flat);
  CHECK_THROWS_AS(convergence_trend({same}, 10, 1), Error);
}

TEST_CASE("one replicate yields p estimates and a valid KS") {
  ExperimentConfig c = small_config();
  const auto rec = run_replicate(c, 0, 0);
  REQUIRE(rec.ok);
  CHECK(rec.hurst_estimates.size() == 3);
  CHECK(rec.rescaled_log.size() == 3);
  CHECK(rec.hurst_assignment.size() == 3);
  CHECK(rec.ks >= 0.0);
  CHECK(rec.ks <= 1.0);
  CHECK(std::is_sorted(rec.eigenvalues.begin(), rec.eigenvalues.end()));
  const auto again = run_replicate(c, 0, 0);
  CHECK(again.eigenvalues == rec.eigenvalues);
  CHECK(run_replicate(c, 0, 1).eigenvalues != rec.eigenvalues);
  CHECK(run_replicate(c, 1, 0).hurst_assignment.size() == 6);
}

TEST_CASE("summary does not depend on the worker count") {
  const auto c = small_config();
  const auto one = io::summary_json(run_experiment(c, 1)).dump();
  const auto three = io::summary_json(run_experiment(c, 3)).dump();
  CHECK(one == three);
}

TEST_CASE("pooled histogram equals the histogram of all estimates") {
  const auto s = run_experiment(small_config(), 2);
  REQUIRE(s.configs.size() == 2);
  CHECK_FALSE(s.failed);
  for (const auto& cs : s.configs) {
    std::vector<double> all;
    for (const auto& r : cs.records) all.insert(all.end(), r.hurst_estimates.begin(), r.hurst_estimates.end());
    const auto h = make_histogram(all, 0.0, 1.0, 0.02);
    CHECK(h.masses == cs.hurst_histogram.masses);
    CHECK(cs.failed == 0);
    CHECK(cs.records.size() == 6);
  }
  CHECK(s.trend.medians.size() == 2);
}

TEST_CASE("per-regime replicate counts") {
  auto c = small_config();
  c.replicates_per_regime = {2, 4};
  CHECK(c.replicates_for(0) == 2);
  CHECK(c.replicates_for(1) == 4);
  const auto s = run_experiment(c, 2);
  CHECK(s.configs[0].records.size() == 2);
  CHECK(s.configs[1].records.size() == 4);
  c.replicates_per_regime = {2};
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("config validation") {
  auto expect = [](const ExperimentConfig& c, const char* needle) {
    try {
      c.validate();
      FAIL("accepted config");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Validation);
      CAPTURE(e.what());
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  CHECK_NOTHROW(small_config().validate());
  auto c = small_config();
  c.schedule = {{1024, 16, 70}};
  expect(c, "A4");
  c = small_config();
  c.octave_range = std::pair{4, 4};
  expect(c, "j1 < j2");
  c = small_config();
  c.octave_range = std::pair{3, 9};
  expect(c, "A4");
  c = small_config();
  c.mixing.kind = MixingSpec::Kind::RandomConditioned;
  c.mixing.condition_bound = 0.5;
  expect(c, "A5");
  c = small_config();
  c.replicates = 0;
  expect(c, "replicates");
  c = small_config();
  c.family_order = 1;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("default octave range ends at the scale octave") {
  ExperimentConfig c;
  CHECK(c.octave_range_for({1u << 15, 32, 32}) == std::pair{3, 5});
  c.octave = 2;
  CHECK(c.octave_range_for({1u << 15, 32, 32}) == std::pair{3, 7});
  c.octave_range = std::pair{2, 6};
  CHECK(c.octave_range_for({1u << 15, 32, 32}) == std::pair{2, 6});
}

}
