#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "emt/dst/mass_function.hpp"
#include "emt/dst/views.hpp"
#include "emt/error.hpp"
#include "emt/focal_structure.hpp"
#include "emt/kernels/naive.hpp"

namespace emt {

inline constexpr double additive_tolerance = 1e-9;
inline constexpr double multiplicative_tolerance = 1e-7;

struct verify_entry {
  function_kind kind = function_kind::commonality;
  scheme used = scheme::semilattice;
  double max_deviation = 0;  // absolute for masses, q, b; relative for weights
  std::string worst_set;
  bool pass = true;
};

struct verify_report {
  std::vector<verify_entry> entries;
  bool pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const verify_entry& e) { return e.pass; });
  }
};

struct verify_options {
  std::size_t max_omega = 12;
  /// Corrupts one node value of the first computed view; a negative control.
  bool inject_fault = false;
};

namespace detail {

struct deviation_tracker {
  verify_entry entry;
  bool relative = false;

  template <class Set>
  void observe(const frame_of_discernment& frame, const Set& s, double got, double expected) {
    const double dev = relative ? std::abs(got - expected) / std::max(std::abs(expected), 1e-300)
                                : std::abs(got - expected);
    if (!(dev <= entry.max_deviation)) {
      entry.max_deviation = std::isnan(dev) ? INFINITY : dev;
      entry.worst_set = frame.format(s);
    }
  }

  verify_entry finish() {
    entry.pass = entry.max_deviation <= (relative ? multiplicative_tolerance : additive_tolerance);
    return entry;
  }
};

}  // namespace detail

/// Compares every applicable scheme against the definition evaluated over the
/// full powerset: q and b at every set through lookups, masses after the
/// inverse transform, and weights when their support condition holds.
template <class Set>
verify_report verify_mass(const mass_function<Set>& m, const verify_options& opt = {}) {
  const std::size_t n = m.width();
  if (n > opt.max_omega || n > dense_width_limit)
    throw error(error_code::frame_too_large, std::to_string(n) + " states exceed the oracle limit of " +
                                                 std::to_string(std::min(opt.max_omega, dense_width_limit)));
  const auto& frame = m.frame();
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<double> dense(size, 0.0);
  for (const auto& [s, v] : m.focal_elements()) dense[s.word(0)] = v;

  verify_report report;
  bool fault_pending = opt.inject_fault;
  const auto support = m.support();
  const bool consonant = consonance_check(support).is_consonant;

  for (auto kind : {function_kind::commonality, function_kind::implicability}) {
    const order_relation order = order_of(kind);
    const auto expected = naive_transform(dense, n, {order, combine_op::additive, direction::zeta});
    const Set boundary = kind == function_kind::commonality ? Set::full(n) : Set{};
    const bool weights_defined = m(boundary) != 0.0 &&
                                 std::none_of(expected.begin(), expected.end(), [](double v) { return v == 0.0; });
    std::vector<double> expected_w;
    if (weights_defined) {
      std::vector<double> inv(size);
      for (std::uint64_t k = 0; k < size; ++k) inv[k] = 1.0 / expected[k];
      expected_w = naive_transform(inv, n, {order, combine_op::multiplicative, direction::moebius});
    }

    for (auto s : {scheme::consonant, scheme::order_agnostic, scheme::semilattice, scheme::lattice_support, scheme::fmt}) {
      if (s == scheme::consonant && !consonant) continue;
      if (s == scheme::fmt && n > fmt_width_limit) continue;
      auto view = zeta_of_mass(m, kind, derive_options{s, {}});
      if (fault_pending) {
        auto values = view.values();
        values.back() += 0.125;
        view = zeta_view<Set>(kind, frame, view.structure(), std::move(values));
        fault_pending = false;
      }

      detail::deviation_tracker z{{kind, s, 0, "", true}, false};
      for (std::uint64_t k = 0; k < size; ++k) z.observe(frame, Set::from_word(k), view(Set::from_word(k)), expected[k]);
      report.entries.push_back(z.finish());

      detail::deviation_tracker back{{function_kind::mass, s, 0, "", true}, false};
      const auto recovered = mass(view);
      for (std::uint64_t k = 0; k < size; ++k)
        back.observe(frame, Set::from_word(k), recovered(Set::from_word(k)), dense[k]);
      report.entries.push_back(back.finish());

      if (weights_defined) {
        const auto w = weights(view);
        detail::deviation_tracker wt{
            {kind == function_kind::commonality ? function_kind::conj_weight : function_kind::disj_weight, s, 0, "", true},
            true};
        for (std::uint64_t k = 0; k < size; ++k) wt.observe(frame, Set::from_word(k), w(Set::from_word(k)), expected_w[k]);
        report.entries.push_back(wt.finish());
      }
    }
  }
  return report;
}

}  // namespace emt
