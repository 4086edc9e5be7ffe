#include <gtest/gtest.h>

#include <algorithm>

#include "emt/bench.hpp"
#include "emt/verify.hpp"

using namespace emt;

TEST(Generators, ShapesOfSupports) {
  support_generator gen(1);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + gen.rng()() % 20;
    const std::size_t k = 1 + gen.rng()() % n;
    const auto r = gen.random(n, k);
    ASSERT_EQ(r.size(), k);
    for (auto s : r) ASSERT_FALSE(s.empty());
    auto uniq = r;
    std::sort(uniq.begin(), uniq.end());
    ASSERT_EQ(std::unique(uniq.begin(), uniq.end()), uniq.end());

    const auto chain = gen.consonant(n, k);
    ASSERT_EQ(chain.size(), k);
    ASSERT_TRUE(consonance_check(chain).is_consonant);

    const auto qb = gen.quasi_bayesian(n, k);
    ASSERT_EQ(qb.size(), k);
    for (std::size_t i = 0; i < k; ++i) {
      ASSERT_FALSE(qb[i].empty());
      for (std::size_t j = i + 1; j < k; ++j) ASSERT_TRUE((qb[i] & qb[j]).empty());
    }
  }
  EXPECT_THROW(gen.random(2, 4), error);
  EXPECT_THROW(gen.consonant(3, 4), error);
  EXPECT_THROW(gen.random(65, 1), error);
}

TEST(Generators, SeedsReproduce) {
  support_generator x(42), y(42);
  EXPECT_EQ(x.random(12, 8), y.random(12, 8));
  const auto frame = numbered_frame(12);
  const auto sup = x.random(12, 5);
  y.random(12, 5);
  const auto m = x.masses(frame, sup), m2 = y.masses(frame, sup);
  EXPECT_NEAR(m.total(), 1.0, 1e-12);
  for (const auto& [s, v] : m.focal_elements()) EXPECT_EQ(m2(s), v);
}

TEST(Bench, ConsonantChainUsesKMinusOneCombines) {
  const auto r = run_bench({generator_kind::consonant, 16, 16, 3, 1});
  ASSERT_TRUE(r.ok()) << r.violations.front();
  const auto& inst = r.instances.at(0);
  EXPECT_EQ(inst.fmt_baseline, 16u << 15);
  const auto& automatic = inst.runs.at(0);
  EXPECT_TRUE(automatic.automatic);
  EXPECT_EQ(automatic.used, scheme::consonant);
  EXPECT_EQ(automatic.zeta.combines, 15u);
  EXPECT_EQ(automatic.moebius.combines, 15u);
  const auto fmt = std::find_if(inst.runs.begin(), inst.runs.end(), [](const scheme_run& s) { return s.used == scheme::fmt; });
  ASSERT_NE(fmt, inst.runs.end());
  EXPECT_EQ(fmt->zeta.combines, 16u << 15);
}

TEST(Bench, QuasiBayesianWorkIsLinearInSupport) {
  std::vector<double> xs, ys;
  for (std::size_t k : {4, 8, 16}) {
    const auto r = run_bench({generator_kind::quasi_bayesian, 16, k, 5, 1});
    ASSERT_TRUE(r.ok());
    const auto& run = r.instances.at(0).runs.at(0);
    EXPECT_EQ(run.used, scheme::order_agnostic);
    xs.push_back(static_cast<double>(k));
    ys.push_back(static_cast<double>(run.zeta.combines + run.moebius.combines));
  }
  const auto fit = fit_line(xs, ys);
  EXPECT_GE(fit.r2, 0.99);
  EXPECT_GT(fit.slope, 0.0);
}

TEST(Bench, RandomSupportStaysBelowFmtAndReportsEpsilon) {
  const auto r = run_bench({generator_kind::random, 10, 8, 7, 5});
  ASSERT_TRUE(r.ok()) << r.violations.front();
  ASSERT_EQ(r.instances.size(), 5u);
  for (const auto& inst : r.instances)
    for (const auto& run : inst.runs)
      if (run.used != scheme::order_agnostic && run.used != scheme::fmt) {
        EXPECT_LE(run.zeta.combines, 10u << 9);
      }
  const auto j = to_json(r);
  EXPECT_TRUE(j.at("ok").get<bool>());
  bool semilattice_seen = false;
  for (const auto& run : j.at("instances")[0].at("runs"))
    if (run.at("scheme") == "semilattice") {
      semilattice_seen = true;
      EXPECT_TRUE(run.contains("epsilon"));
      EXPECT_GE(run.at("epsilon").get<double>(), 0.0);
    }
  EXPECT_TRUE(semilattice_seen);
}

TEST(FitLine, ExactLineAndErrors) {
  const auto f = fit_line({1, 2, 3}, {3, 5, 7});
  EXPECT_NEAR(f.slope, 2.0, 1e-12);
  EXPECT_NEAR(f.intercept, 1.0, 1e-12);
  EXPECT_NEAR(f.r2, 1.0, 1e-12);
  EXPECT_THROW(fit_line({1, 1}, {2, 3}), error);
}

TEST(Verify, ExampleChainPassesTightly) {
  const auto frame = build_fod({"a", "b", "c"});
  const mass_function<> m(frame,
                          {{subset::from_word(1), 0.5}, {subset::from_word(3), 0.3}, {subset::from_word(7), 0.2}}, true);
  const auto r = verify_mass(m);
  EXPECT_TRUE(r.pass());
  for (const auto& e : r.entries) EXPECT_LE(e.max_deviation, 1e-12) << to_string(e.kind) << " " << to_string(e.used);
  const bool consonant_checked = std::any_of(r.entries.begin(), r.entries.end(),
                                             [](const verify_entry& e) { return e.used == scheme::consonant; });
  EXPECT_TRUE(consonant_checked);
}

TEST(Verify, GeneratorMatrixPasses) {
  for (auto g : {generator_kind::consonant, generator_kind::quasi_bayesian, generator_kind::random})
    for (std::size_t n = 3; n <= 10; ++n) {
      support_generator gen(100 + n);
      const std::size_t k = std::min<std::size_t>(n, g == generator_kind::random ? 8 : n);
      auto sup = gen.generate(g, n, k);
      const auto m = gen.masses(numbered_frame(n), sup);
      const auto r = verify_mass(m);
      ASSERT_TRUE(r.pass()) << to_string(g) << " n=" << n;
    }
}

TEST(Verify, InjectedFaultIsCaughtWithItsSet) {
  support_generator gen(9);
  const auto m = gen.masses(numbered_frame(6), gen.random(6, 5));
  const auto r = verify_mass(m, {12, true});
  EXPECT_FALSE(r.pass());
  const auto bad = std::find_if(r.entries.begin(), r.entries.end(), [](const verify_entry& e) { return !e.pass; });
  ASSERT_NE(bad, r.entries.end());
  EXPECT_FALSE(bad->worst_set.empty());
  EXPECT_GE(bad->max_deviation, 0.1);
}

TEST(Verify, RefusesLargeFrames) {
  support_generator gen(10);
  const auto m = gen.masses(numbered_frame(20), gen.random(20, 4));
  try {
    verify_mass(m);
    FAIL() << "expected frame_too_large";
  } catch (const error& e) {
    EXPECT_EQ(e.code(), error_code::frame_too_large);
    EXPECT_EQ(to_string(e.code()), "FrameTooLargeForOracle");
  }
  EXPECT_THROW(verify_mass(gen.masses(numbered_frame(8), gen.random(8, 3)), {7, false}), error);
}
