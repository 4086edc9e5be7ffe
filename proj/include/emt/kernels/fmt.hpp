#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "emt/kernels/naive.hpp"
#include "emt/transform.hpp"

namespace emt {

/// Fast Möbius Transform over the full powerset, in place: n passes, pass i
/// pairing each Y with Y∖{i} (⊆) or Y∪{i} (⊇). Exactly n·2^(n-1) combines.
template <class V>
void fmt_transform(std::vector<V>& f, std::size_t n, const transform_spec& spec, op_counts* counts = nullptr) {
  detail::check_dense(n, f.size());
  const std::uint64_t size = std::uint64_t{1} << n;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t y = 0; y < size; ++y) {
      const bool has = y & bit;
      if (spec.order == order_relation::subset_of && has)
        detail::apply(spec, f[y], f[y ^ bit], subset::from_word(y ^ bit), counts);
      else if (spec.order == order_relation::superset_of && !has)
        detail::apply(spec, f[y], f[y | bit], subset::from_word(y | bit), counts);
    }
  }
}

}  // namespace emt
