#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "emt/error.hpp"

namespace emt {

/// Which of (2^Ω, ⊆) and (2^Ω, ⊇) is the partial order of the transform.
enum class order_relation { subset_of, superset_of };

enum class combine_op { additive, multiplicative };

enum class direction { zeta, moebius };

constexpr order_relation dual(order_relation o) noexcept {
  return o == order_relation::subset_of ? order_relation::superset_of : order_relation::subset_of;
}

constexpr std::string_view to_string(order_relation o) noexcept {
  return o == order_relation::subset_of ? "subset" : "superset";
}
constexpr std::string_view to_string(combine_op o) noexcept {
  return o == combine_op::additive ? "additive" : "multiplicative";
}
constexpr std::string_view to_string(direction d) noexcept { return d == direction::zeta ? "zeta" : "moebius"; }

/// Zeta: g(y) = ⊕_{x ≤ y} f(x). Möbius is its inverse; for ⊕ = × it is
/// f(y) = ∏_{x ≤ y} g(x)^{μ(x,y)} with μ(x,y) = (-1)^{|y Δ x|}.
struct transform_spec {
  order_relation order = order_relation::superset_of;
  combine_op op = combine_op::additive;
  direction dir = direction::zeta;

  constexpr transform_spec inverse() const noexcept {
    return {order, op, dir == direction::zeta ? direction::moebius : direction::zeta};
  }
  friend constexpr bool operator==(const transform_spec&, const transform_spec&) = default;
};

/// All eight (order, op, direction) combinations.
inline std::vector<transform_spec> all_transform_specs() {
  std::vector<transform_spec> out;
  for (auto o : {order_relation::subset_of, order_relation::superset_of})
    for (auto op : {combine_op::additive, combine_op::multiplicative})
      for (auto d : {direction::zeta, direction::moebius}) out.push_back({o, op, d});
  return out;
}

/// Work counters. Identity arrows are never counted.
struct op_counts {
  std::size_t combines = 0;
  std::size_t proxy_searches = 0;
  std::size_t proxy_touched = 0;

  op_counts& operator+=(const op_counts& o) {
    combines += o.combines;
    proxy_searches += o.proxy_searches;
    proxy_touched += o.proxy_touched;
    return *this;
  }
};

/// Arithmetic used by the kernels. Specialize for symbolic value types.
template <class V>
struct value_traits {
  static V neutral(combine_op op) { return op == combine_op::additive ? V(0) : V(1); }

  static void combine(combine_op op, V& acc, const V& x) {
    if (op == combine_op::additive)
      acc += x;
    else
      acc *= x;
  }

  /// Inverse of combine. Returns false on a zero divisor.
  static bool uncombine(combine_op op, V& acc, const V& x) {
    if (op == combine_op::additive) {
      acc -= x;
      return true;
    }
    if (x == V(0)) return false;
    acc /= x;
    return true;
  }
};

namespace detail {

template <class Set>
std::vector<std::size_t> members(const Set& s) {
  std::vector<std::size_t> out;
  s.for_each_member([&](std::size_t i) { out.push_back(i); });
  return out;
}

template <class Set>
[[noreturn]] void throw_zero_divisor(const Set& s) {
  auto m = members(s);
  std::string text = "{";
  for (std::size_t k = 0; k < m.size(); ++k) text += (k ? "," : "") + std::to_string(m[k]);
  throw error(error_code::zero_divisor, "zero value used as divisor at set " + text + "}", std::move(m));
}

template <class V, class Set>
void apply(const transform_spec& spec, V& target, const V& source, const Set& source_key, op_counts* counts) {
  if (spec.dir == direction::zeta)
    value_traits<V>::combine(spec.op, target, source);
  else if (!value_traits<V>::uncombine(spec.op, target, source))
    throw_zero_divisor(source_key);
  if (counts) ++counts->combines;
}

}  // namespace detail

}  // namespace emt
