#pragma once

#include <bit>
#include <cmath>
#include <type_traits>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "emt/error.hpp"
#include "emt/subset.hpp"
#include "emt/transform.hpp"

namespace emt {

/// Largest frame the dense kernels accept; 2^n values are materialized.
inline constexpr std::size_t dense_width_limit = 24;

namespace detail {

inline void check_dense(std::size_t n, std::size_t size) {
  if (n > dense_width_limit)
    throw error(error_code::frame_too_large, "dense transform over " + std::to_string(n) + " states");
  if (size != (std::size_t{1} << n))
    throw error(error_code::width_mismatch, "dense family has " + std::to_string(size) + " values, expected 2^" +
                                                std::to_string(n));
}

// Calls f(x) for every x with x ≤ y in the chosen order, y itself included.
template <class F>
void for_each_below(std::uint64_t y, std::uint64_t full, order_relation order, F&& f) {
  if (order == order_relation::subset_of) {
    for (std::uint64_t x = y;; x = (x - 1) & y) {
      f(x);
      if (x == 0) break;
    }
  } else {
    const std::uint64_t free = full & ~y;
    for (std::uint64_t s = free;; s = (s - 1) & free) {
      f(y | s);
      if (s == 0) break;
    }
  }
}


// ∏ f(x)^{±1} over x ≤ y as sign · exp(Σ ±log|f(x)|). A plain running product
// over 2^n factors overflows long before the quotient is formed.
template <class V>
V log_domain_moebius(const std::vector<V>& f, std::uint64_t y, std::uint64_t full, order_relation order) {
  V log_sum = 0;
  bool negative = false, zero = false;
  for_each_below(y, full, order, [&](std::uint64_t x) {
    const bool odd = std::popcount(x ^ y) & 1;
    if (f[x] == V(0)) {
      if (odd) throw_zero_divisor(subset::from_word(x));
      zero = true;
      return;
    }
    negative ^= f[x] < V(0);
    log_sum += odd ? -std::log(std::abs(f[x])) : std::log(std::abs(f[x]));
  });
  if (zero) return V(0);
  return (negative ? V(-1) : V(1)) * std::exp(log_sum);
}

}  // namespace detail

/// Direct evaluation of the definition over the full powerset, O(3^n).
/// `f` is indexed by the subset's bit word.
template <class V>
std::vector<V> naive_transform(const std::vector<V>& f, std::size_t n, const transform_spec& spec) {
  detail::check_dense(n, f.size());
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<V> g(f.size(), value_traits<V>::neutral(spec.op));
  for (std::uint64_t y = 0; y <= full; ++y) {
    if constexpr (std::is_floating_point_v<V>) {
      if (spec.op == combine_op::multiplicative && spec.dir == direction::moebius) {
        g[y] = detail::log_domain_moebius(f, y, full, spec.order);
        continue;
      }
    }
    V acc = value_traits<V>::neutral(spec.op);
    // Positive Möbius terms first so a symbolic value never goes transiently negative.
    for (int pass = 0; pass < 2; ++pass) {
      detail::for_each_below(y, full, spec.order, [&](std::uint64_t x) {
        const bool odd = std::popcount(x ^ y) & 1;
        if (spec.dir == direction::zeta) {
          if (pass == 0) value_traits<V>::combine(spec.op, acc, f[x]);
        } else if (!odd && pass == 0) {
          value_traits<V>::combine(spec.op, acc, f[x]);
        } else if (odd && pass == 1) {
          if (!value_traits<V>::uncombine(spec.op, acc, f[x])) detail::throw_zero_divisor(subset::from_word(x));
        }
      });
    }
    g[y] = acc;
  }
  return g;
}

}  // namespace emt
