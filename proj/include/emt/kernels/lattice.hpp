#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "emt/error.hpp"
#include "emt/kernels/semilattice.hpp"
#include "emt/transform.hpp"

namespace emt {

/// Transform on a lattice-support family: pass k moves value along A → A∪i_k
/// (order ⊇) or A → A∩ī_k (order ⊆) with no proxy search.
///
/// The family is either the full sublattice generated by the support, or the
/// part of it below (⊇) or above (⊆) some support element. In the latter case
/// a missing A∪i_k lies outside every support element's range and carries the
/// neutral value, so the arrow is skipped.
template <class Set, class V>
void lattice_transform(const std::vector<Set>& nodes, std::vector<V>& values, const std::vector<Set>& iotas,
                       const transform_spec& spec, op_counts* counts = nullptr) {
  if (values.size() != nodes.size())
    throw error(error_code::width_mismatch, "lattice kernel: values and nodes differ in length");
  const bool meet = spec.order == order_relation::superset_of;
  const auto order = detail::sorted_iotas(iotas, spec.order);
  std::unordered_map<Set, std::size_t> index;
  index.reserve(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) index.emplace(nodes[k], k);

  const std::size_t K = order.size();
  for (std::size_t s = 0; s < K; ++s) {
    const Set& iota = order[spec.dir == direction::zeta ? s : K - 1 - s];
    for (std::size_t a = 0; a < nodes.size(); ++a) {
      const Set B = meet ? (nodes[a] | iota) : (nodes[a] & iota);
      if (B == nodes[a]) continue;
      auto it = index.find(B);
      if (it != index.end()) detail::apply(spec, values[a], values[it->second], B, counts);
    }
  }
}

}  // namespace emt
