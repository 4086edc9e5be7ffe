#pragma once

#include <cmath>
#include <vector>

#include "emt/dst/mass_function.hpp"
#include "emt/dst/views.hpp"
#include "emt/error.hpp"
#include "emt/kernels/dispatch.hpp"

namespace emt {

/// Conjunctive combination m1 ∩ m2 through commonalities: q12 = q1·q2 on the
/// focal points of supp(m1) ∪ supp(m2), then back to masses. With `normalize`
/// the mass on ∅ is removed and the rest rescaled by 1/(1 - m12(∅)).
template <class Set>
mass_function<Set> fuse_conjunctive(const mass_function<Set>& m1, const mass_function<Set>& m2, bool normalize,
                                    const derive_options& opt = {}, op_counts* counts = nullptr) {
  if (!(m1.frame() == m2.frame()))
    throw error(error_code::frame_mismatch, "fusion requires both mass functions on the same frame");
  std::vector<Set> support = m1.support();
  for (const auto& s : m2.support()) support.push_back(s);
  if (support.empty()) throw error(error_code::empty_support, "nothing to fuse");

  const auto q1 = commonality(m1, opt);
  const auto q2 = commonality(m2, opt);
  auto fs = make_structure(support, m1.width(), order_relation::superset_of, opt);
  std::vector<double> values;
  values.reserve(fs.closure.size());
  for (const auto& x : fs.closure) values.push_back(q1(x) * q2(x));
  op_counts local = q1.counts();
  local += q2.counts();
  run_transform(fs, values, {order_relation::superset_of, combine_op::additive, direction::moebius}, &local);
  if (counts) *counts += local;

  mass_function<Set> out(m1.frame());
  for (std::size_t k = 0; k < values.size(); ++k)
    if (std::abs(values[k]) > zero_tolerance) out.set(fs.closure[k], values[k]);
  if (!normalize) return out;

  const double conflict = out(Set{});
  if (std::abs(1.0 - conflict) <= zero_tolerance)
    throw error(error_code::total_conflict, "the two bodies of evidence are in total conflict");
  out.set(Set{}, 0.0);
  mass_function<Set> scaled(out.frame());
  for (const auto& [s, v] : out.focal_elements()) scaled.set(s, v / (1.0 - conflict));
  return scaled;
}

/// Drops focal sets with |m| < eps and rescales the rest to sum to 1.
template <class Set>
mass_function<Set> prune_and_normalize(const mass_function<Set>& m, double eps) {
  if (eps < 0) throw error(error_code::invalid_mass, "pruning threshold must be non-negative");
  std::vector<std::pair<Set, double>> kept;
  double total = 0;
  for (const auto& [s, v] : m.focal_elements())
    if (std::abs(v) >= eps) {
      kept.emplace_back(s, v);
      total += v;
    }
  if (kept.empty()) throw error(error_code::empty_support, "every focal set fell below the pruning threshold");
  if (total <= 0) throw error(error_code::invalid_mass, "remaining masses do not sum to a positive value");
  for (auto& [s, v] : kept) v /= total;
  return mass_function<Set>(m.frame(), kept);
}

}  // namespace emt
