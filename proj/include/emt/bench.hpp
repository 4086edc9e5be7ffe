#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "emt/dst/mass_function.hpp"
#include "emt/error.hpp"
#include "emt/focal_structure.hpp"
#include "emt/kernels/dispatch.hpp"

namespace emt {

enum class generator_kind { random, consonant, quasi_bayesian };

constexpr std::string_view to_string(generator_kind g) noexcept {
  switch (g) {
    case generator_kind::random: return "random";
    case generator_kind::consonant: return "consonant";
    case generator_kind::quasi_bayesian: return "quasi_bayesian";
  }
  return "unknown";
}

inline generator_kind parse_generator(std::string_view s) {
  for (auto g : {generator_kind::random, generator_kind::consonant, generator_kind::quasi_bayesian})
    if (to_string(g) == s) return g;
  throw error(error_code::parse_error, "unknown generator '" + std::string(s) + "'");
}

struct generator_spec {
  generator_kind kind = generator_kind::random;
  std::size_t width = 10;    // |Ω|
  std::size_t support = 8;   // |S|
  std::uint64_t seed = 0;
  std::size_t trials = 1;
};

/// Random supports over subset (|Ω| ≤ 64).
class support_generator {
 public:
  explicit support_generator(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() noexcept { return rng_; }

  /// Distinct non-empty sets drawn uniformly, duplicates rejected.
  std::vector<subset> random(std::size_t n, std::size_t k) {
    check(n);
    const double space = n >= 63 ? 9.2e18 : static_cast<double>((std::uint64_t{1} << n) - 1);
    if (static_cast<double>(k) > space)
      throw error(error_code::invalid_mass, "cannot draw " + std::to_string(k) + " distinct non-empty subsets");
    const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    std::vector<subset> out;
    std::unordered_set<subset> seen;
    while (out.size() < k) {
      const auto s = subset::from_word(rng_() & mask);
      if (!s.empty() && seen.insert(s).second) out.push_back(s);
    }
    return out;
  }

  /// A chain F_1 ⊂ ... ⊂ F_k along a random ordering of the states.
  std::vector<subset> consonant(std::size_t n, std::size_t k) {
    check(n);
    if (k == 0 || k > n) throw error(error_code::invalid_mass, "a chain over n states has 1..n elements");
    std::vector<std::size_t> perm(n), sizes(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::iota(sizes.begin(), sizes.end(), std::size_t{1});
    std::shuffle(perm.begin(), perm.end(), rng_);
    std::shuffle(sizes.begin(), sizes.end(), rng_);
    sizes.resize(k);
    std::sort(sizes.begin(), sizes.end());
    std::vector<subset> out;
    subset acc;
    std::size_t used = 0;
    for (auto sz : sizes) {
      while (used < sz) acc.set(perm[used++]);
      out.push_back(acc);
    }
    return out;
  }

  /// k pairwise disjoint non-empty sets over a random part of Ω.
  std::vector<subset> quasi_bayesian(std::size_t n, std::size_t k) {
    check(n);
    if (k == 0 || k > n) throw error(error_code::invalid_mass, "k disjoint non-empty sets need 1..n states");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng_);
    const std::size_t used = k + std::uniform_int_distribution<std::size_t>(0, n - k)(rng_);
    std::vector<subset> out(k);
    for (std::size_t i = 0; i < used; ++i)
      out[i < k ? i : std::uniform_int_distribution<std::size_t>(0, k - 1)(rng_)].set(perm[i]);
    return out;
  }

  std::vector<subset> generate(generator_kind g, std::size_t n, std::size_t k) {
    switch (g) {
      case generator_kind::random: return random(n, k);
      case generator_kind::consonant: return consonant(n, k);
      case generator_kind::quasi_bayesian: return quasi_bayesian(n, k);
    }
    return {};
  }

  /// Masses from a symmetric Dirichlet(alpha) on the given support.
  mass_function<subset> masses(const frame_of_discernment& frame, const std::vector<subset>& support, double alpha = 1.0) {
    std::gamma_distribution<double> gamma(alpha, 1.0);
    std::vector<double> g(support.size());
    double total = 0;
    for (auto& x : g) total += (x = std::max(gamma(rng_), 1e-300));
    std::vector<std::pair<subset, double>> pairs;
    for (std::size_t i = 0; i < support.size(); ++i) pairs.emplace_back(support[i], g[i] / total);
    return mass_function<subset>(frame, pairs);
  }

 private:
  static void check(std::size_t n) {
    if (n == 0 || n > subset::capacity)
      throw error(error_code::too_many_labels, "generator frames hold 1.." + std::to_string(subset::capacity) + " states");
  }

  std::mt19937_64 rng_;
};

inline frame_of_discernment numbered_frame(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("w" + std::to_string(i + 1));
  return frame_of_discernment(labels, subset::capacity);
}

/// Forced order-agnostic runs on larger non-quasi-Bayesian closures are skipped.
inline constexpr std::size_t max_agnostic_closure = 4096;

inline std::uint64_t fmt_combines(std::size_t n) { return static_cast<std::uint64_t>(n) << (n - 1); }

struct linear_fit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;  // 1 when y is exactly affine in x, including a constant y
};

/// Ordinary least squares of y on x. Needs two distinct x values.
inline linear_fit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw error(error_code::invalid_mass, "a line fit needs two or more points");
  const double k = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / k, my = std::accumulate(y.begin(), y.end(), 0.0) / k;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) throw error(error_code::invalid_mass, "a line fit needs two distinct x values");
  linear_fit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

struct scheme_run {
  scheme used = scheme::semilattice;
  bool automatic = false;
  std::size_t closure_size = 0;
  op_counts zeta;
  op_counts moebius;
  double seconds = 0;
  double max_roundtrip_error = 0;
};

struct bench_instance {
  generator_kind generator = generator_kind::random;
  std::size_t width = 0;
  std::size_t support = 0;
  std::size_t trial = 0;
  std::uint64_t fmt_baseline = 0;  // n·2^(n-1)
  std::vector<scheme_run> runs;
};

struct bench_report {
  generator_spec spec;
  std::vector<bench_instance> instances;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

namespace detail {

inline scheme_run time_scheme(const focal_structure<subset>& fs, const mass_function<subset>& m, bool automatic) {
  scheme_run run;
  run.used = fs.chosen;
  run.automatic = automatic;
  run.closure_size = fs.closure.size();
  std::vector<double> values;
  values.reserve(fs.closure.size());
  for (const auto& x : fs.closure) values.push_back(m(x));
  const auto original = values;
  const auto start = std::chrono::steady_clock::now();
  run_transform(fs, values, {fs.order, combine_op::additive, direction::zeta}, &run.zeta);
  run_transform(fs, values, {fs.order, combine_op::additive, direction::moebius}, &run.moebius);
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (std::size_t k = 0; k < values.size(); ++k)
    run.max_roundtrip_error = std::max(run.max_roundtrip_error, std::abs(values[k] - original[k]));
  return run;
}

}  // namespace detail

/// Commonality zeta and Möbius on generated instances under the automatic
/// scheme and every applicable forced scheme. Violations: an automatic,
/// consonant, semilattice or lattice-support run exceeding the FMT count, a
/// consonant run differing from K-1 combines, or a failed round trip.
inline bench_report run_bench(const generator_spec& spec, const scheme_thresholds& thresholds = {},
                              std::size_t max_closure = 1u << 16) {
  bench_report report{spec, {}, {}};
  support_generator gen(spec.seed);
  const auto frame = numbered_frame(spec.width);
  for (std::size_t t = 0; t < spec.trials; ++t) {
    const auto support = gen.generate(spec.kind, spec.width, spec.support);
    const auto m = gen.masses(frame, support);
    bench_instance inst{spec.kind, spec.width, support.size(), t, fmt_combines(spec.width), {}};
    const auto auto_fs = analyze(support, spec.width, order_relation::superset_of, thresholds);
    inst.runs.push_back(detail::time_scheme(auto_fs, m, true));
    for (auto s : {scheme::consonant, scheme::order_agnostic, scheme::semilattice, scheme::lattice_support, scheme::fmt}) {
      if (s == scheme::consonant && !auto_fs.is_consonant) continue;
      if (s == scheme::fmt && spec.width > fmt_width_limit) continue;
      auto fs = analyze_with(support, spec.width, order_relation::superset_of, s);
      if (s != scheme::fmt && fs.closure.size() > max_closure) continue;
      // The double loop is quadratic in the closure off its quasi-Bayesian home ground.
      if (s == scheme::order_agnostic && !fs.is_almost_bayesian && fs.closure.size() > max_agnostic_closure) continue;
      inst.runs.push_back(detail::time_scheme(fs, m, false));
    }
    for (const auto& r : inst.runs) {
      const std::string where = std::string(to_string(spec.kind)) + " trial " + std::to_string(t) + " scheme " +
                                std::string(to_string(r.used)) + (r.automatic ? " (auto)" : "");
      const bool bounded = r.automatic || r.used == scheme::consonant || r.used == scheme::semilattice ||
                           r.used == scheme::lattice_support;
      if (bounded && (r.zeta.combines > inst.fmt_baseline || r.moebius.combines > inst.fmt_baseline))
        report.violations.push_back(where + ": combine count above n*2^(n-1)");
      if (r.used == scheme::consonant && (r.zeta.combines + 1 != support.size() || r.moebius.combines + 1 != support.size()))
        report.violations.push_back(where + ": consonant combines differ from K-1");
      if (r.used == scheme::fmt && (r.zeta.combines != inst.fmt_baseline || r.moebius.combines != inst.fmt_baseline))
        report.violations.push_back(where + ": fmt combines differ from n*2^(n-1)");
      if (r.max_roundtrip_error > 1e-9) report.violations.push_back(where + ": zeta/moebius round trip failed");
    }
    report.instances.push_back(std::move(inst));
  }
  return report;
}

inline nlohmann::json to_json(const bench_report& r) {
  nlohmann::json j;
  j["generator"] = std::string(to_string(r.spec.kind));
  j["width"] = r.spec.width;
  j["support"] = r.spec.support;
  j["seed"] = r.spec.seed;
  j["trials"] = r.spec.trials;
  j["instances"] = nlohmann::json::array();
  for (const auto& inst : r.instances) {
    nlohmann::json ji{{"trial", inst.trial}, {"support", inst.support}, {"fmt_combines", inst.fmt_baseline}};
    ji["runs"] = nlohmann::json::array();
    for (const auto& run : inst.runs) {
      const auto searches = run.zeta.proxy_searches + run.moebius.proxy_searches;
      const auto touched = run.zeta.proxy_touched + run.moebius.proxy_touched;
      ji["runs"].push_back({{"scheme", std::string(to_string(run.used))},
                            {"automatic", run.automatic},
                            {"closure_size", run.closure_size},
                            {"zeta_combines", run.zeta.combines},
                            {"moebius_combines", run.moebius.combines},
                            {"proxy_searches", searches},
                            {"proxy_touched", touched},
                            {"epsilon", searches ? static_cast<double>(touched) / static_cast<double>(searches) : 0.0},
                            {"seconds", run.seconds}});
    }
    j["instances"].push_back(std::move(ji));
  }
  j["violations"] = r.violations;
  j["ok"] = r.ok();
  return j;
}

}  // namespace emt
