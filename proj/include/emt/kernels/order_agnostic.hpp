#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "emt/error.hpp"
#include "emt/transform.hpp"

namespace emt {

/// Direct double loop over any node family that contains the support of the
/// transformed function. Cost is one subset test per node pair, independent
/// of the frame size; combines happen only between comparable nodes.
template <class Set, class V>
void order_agnostic_transform(const std::vector<Set>& nodes, std::vector<V>& values, const transform_spec& spec,
                              op_counts* counts = nullptr) {
  if (values.size() != nodes.size())
    throw error(error_code::width_mismatch, "order-agnostic kernel: values and nodes differ in length");
  const bool sup = spec.order == order_relation::superset_of;
  auto strictly_below = [&](const Set& x, const Set& y) {  // x < y in the chosen order
    return x != y && (sup ? x.is_superset_of(y) : x.is_subset_of(y));
  };

  if (spec.dir == direction::zeta) {
    const std::vector<V> f = values;
    for (std::size_t y = 0; y < nodes.size(); ++y)
      for (std::size_t x = 0; x < nodes.size(); ++x)
        if (strictly_below(nodes[x], nodes[y])) detail::apply(spec, values[y], f[x], nodes[x], counts);
    return;
  }

  // f(y) = g(y) ⊖ f(x) over x < y; lower elements are finished first.
  std::vector<std::size_t> rank(nodes.size());
  std::iota(rank.begin(), rank.end(), std::size_t{0});
  std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) {
    return sup ? nodes[a].count() > nodes[b].count() : nodes[a].count() < nodes[b].count();
  });
  for (std::size_t i = 0; i < rank.size(); ++i) {
    const std::size_t y = rank[i];
    for (std::size_t j = 0; j < i; ++j) {
      const std::size_t x = rank[j];
      if (strictly_below(nodes[x], nodes[y])) detail::apply(spec, values[y], values[x], nodes[x], counts);
    }
  }
}

}  // namespace emt
