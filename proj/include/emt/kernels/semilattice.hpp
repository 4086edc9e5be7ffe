#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "emt/error.hpp"
#include "emt/powerset_tree.hpp"
#include "emt/transform.hpp"

namespace emt {

namespace detail {

// ⊇ walks iotas by ascending cardinality, ⊆ walks dual iotas by descending cardinality.
template <class Set>
std::vector<Set> sorted_iotas(std::vector<Set> iotas, order_relation order) {
  std::sort(iotas.begin(), iotas.end(), [&](const Set& a, const Set& b) {
    return order == order_relation::superset_of ? canonical_less(a, b) : canonical_less(b, a);
  });
  iotas.erase(std::unique(iotas.begin(), iotas.end()), iotas.end());
  return iotas;
}

template <class Set>
powerset_tree<Set, std::size_t> index_tree(const std::vector<Set>& nodes, std::size_t width) {
  powerset_tree<Set, std::size_t> tree(width);
  for (std::size_t k = 0; k < nodes.size(); ++k) tree.insert(nodes[k], k);
  return tree;
}

}  // namespace detail

/// Transform on a family closed under ∩ (order ⊇) or ∪ (order ⊆).
///
/// `iotas` are the join-irreducibles of the generated sublattice for ⊇ and its
/// meet-irreducibles for ⊆. Pass k moves value along A → X where X is the
/// proxy of A∪i_k (smallest node containing it) and X ⊆ A ∪ (i_1 ∪ ... ∪ i_k);
/// dually A∩ī_k, largest contained node, X ⊇ A ∩ (ī_1 ∩ ... ∩ ī_k). Sources
/// always contain i_k and targets never do, so each pass updates in place.
template <class Set, class V>
void semilattice_transform(const std::vector<Set>& nodes, std::vector<V>& values, const std::vector<Set>& iotas,
                           std::size_t width, const transform_spec& spec, op_counts* counts = nullptr,
                           const powerset_tree<Set, std::size_t>* index = nullptr) {
  if (values.size() != nodes.size())
    throw error(error_code::width_mismatch, "semilattice kernel: values and nodes differ in length");
  const bool meet = spec.order == order_relation::superset_of;
  const auto order = detail::sorted_iotas(iotas, spec.order);
  std::optional<powerset_tree<Set, std::size_t>> own;
  if (!index) index = &own.emplace(detail::index_tree(nodes, width));

  // cumulative[k] = i_1 ∪ ... ∪ i_k (resp. ∩ of dual iotas).
  std::vector<Set> cumulative(order.size());
  Set acc = meet ? Set{} : Set::full(width);
  for (std::size_t k = 0; k < order.size(); ++k) {
    acc = meet ? (acc | order[k]) : (acc & order[k]);
    cumulative[k] = acc;
  }

  const std::size_t K = order.size();
  for (std::size_t s = 0; s < K; ++s) {
    const std::size_t k = spec.dir == direction::zeta ? s : K - 1 - s;
    const Set& iota = order[k];
    const Set& cum = cumulative[k];
    for (std::size_t a = 0; a < nodes.size(); ++a) {
      const Set& A = nodes[a];
      const Set B = meet ? (A | iota) : (A & iota);
      if (B == A) continue;
      std::size_t touched = 0;
      const auto proxy = meet ? index->smallest_superset(B, &touched) : index->largest_subset(B, &touched);
      if (counts) {
        ++counts->proxy_searches;
        counts->proxy_touched += touched;
      }
      if (!proxy) continue;
      const Set& X = proxy->first;
      const bool synced = meet ? X.is_subset_of(A | cum) : X.is_superset_of(A & cum);
      if (synced) detail::apply(spec, values[a], values[proxy->second], X, counts);
    }
  }
}

}  // namespace emt
