#pragma once

#include <cstddef>
#include <vector>

#include "emt/error.hpp"
#include "emt/transform.hpp"

namespace emt {

/// Transform on a chain F_1 ⊂ F_2 ⊂ ... ⊂ F_K given in ascending order.
/// values[k] belongs to chain[k]. Exactly K-1 combines.
template <class Set, class V>
void consonant_transform(const std::vector<Set>& chain, std::vector<V>& values, const transform_spec& spec,
                         op_counts* counts = nullptr) {
  if (values.size() != chain.size())
    throw error(error_code::width_mismatch, "consonant kernel: values and chain differ in length");
  for (std::size_t k = 1; k < chain.size(); ++k)
    if (chain[k - 1] == chain[k] || !chain[k - 1].is_subset_of(chain[k]))
      throw error(error_code::not_consonant, "focal sets are not a strictly nested chain");
  const std::size_t K = chain.size();
  if (K < 2) return;
  // ⊆ accumulates from the bottom of the chain, ⊇ from the top. Möbius walks
  // the opposite way so every source is still a zeta value when read.
  const bool up = spec.order == order_relation::subset_of;
  const bool ascending = up == (spec.dir == direction::zeta);
  for (std::size_t s = 0; s + 1 < K; ++s) {
    const std::size_t k = up ? (ascending ? s + 1 : K - 1 - s) : (ascending ? s : K - 2 - s);
    const std::size_t src = up ? k - 1 : k + 1;
    detail::apply(spec, values[k], values[src], chain[src], counts);
  }
}

}  // namespace emt
