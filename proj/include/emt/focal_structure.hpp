#pragma once

#include <algorithm>
#include <cstddef>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "emt/error.hpp"
#include "emt/kernels/naive.hpp"
#include "emt/subset.hpp"
#include "emt/transform.hpp"

namespace emt {

enum class scheme { consonant, order_agnostic, semilattice, lattice_support, fmt };

constexpr std::string_view to_string(scheme s) noexcept {
  switch (s) {
    case scheme::consonant: return "consonant";
    case scheme::order_agnostic: return "agnostic";
    case scheme::semilattice: return "semilattice";
    case scheme::lattice_support: return "lattice";
    case scheme::fmt: return "fmt";
  }
  return "unknown";
}

inline scheme parse_scheme(std::string_view s) {
  for (auto v : {scheme::consonant, scheme::order_agnostic, scheme::semilattice, scheme::lattice_support, scheme::fmt})
    if (to_string(v) == s) return v;
  throw error(error_code::parse_error, "unknown scheme '" + std::string(s) + "'");
}

struct scheme_thresholds {
  /// Semilattice closure is used while |S| ≤ c·|Ω|.
  double c = 10.0;
};

/// Largest frame for which the fmt scheme materializes the powerset.
inline constexpr std::size_t fmt_width_limit = 20;

/// Node family and iota sequence a kernel runs on, plus structure flags.
template <class Set>
struct focal_structure {
  order_relation order = order_relation::superset_of;
  std::size_t width = 0;
  std::vector<Set> support;  // canonical order
  std::vector<Set> closure;  // canonical order; chain order for consonant
  std::vector<Set> iotas;    // kernel order: ascending cardinality for ⊇, descending for ⊆
  bool is_consonant = false;
  bool is_almost_bayesian = false;
  scheme chosen = scheme::semilattice;
};

namespace detail {

template <class Set>
std::vector<Set> dedup(const std::vector<Set>& s) {
  std::vector<Set> out;
  std::unordered_set<Set> seen;
  for (const auto& x : s)
    if (seen.insert(x).second) out.push_back(x);
  return out;
}

template <class Set>
void canonical_sort(std::vector<Set>& s) {
  std::sort(s.begin(), s.end(), canonical_order{});
}

template <class Set>
std::vector<Set> complement_all(const std::vector<Set>& s, std::size_t n) {
  std::vector<Set> out;
  out.reserve(s.size());
  for (const auto& x : s) out.push_back(x.complement(n));
  return out;
}

template <class Set>
Set combine_sets(const Set& a, const Set& b, order_relation order) {
  return order == order_relation::superset_of ? (a & b) : (a | b);
}

}  // namespace detail

/// Smallest family containing S closed under ∩ (order ⊇) or ∪ (order ⊆).
/// Each support element is combined with everything gathered before it.
template <class Set>
std::vector<Set> closure(const std::vector<Set>& S, order_relation order) {
  std::vector<Set> out;
  std::unordered_set<Set> seen;
  for (const auto& s : detail::dedup(S)) {
    const std::size_t before = out.size();
    if (seen.insert(s).second) out.push_back(s);
    for (std::size_t k = 0; k < before; ++k) {
      const Set c = detail::combine_sets(out[k], s, order);
      if (seen.insert(c).second) out.push_back(c);
    }
  }
  detail::canonical_sort(out);
  return out;
}

template <class Set>
struct linear_closure_result {
  std::vector<Set> closure;  // empty when the flag is false
  bool is_almost_bayesian = false;
};

/// Single pass over S∖{Ω} (order ⊇) keeping the running union U. When every
/// overlap U ∩ A_i has at most one element the closure is S, the non-empty
/// overlaps, and ∅ when the whole family has empty intersection. Order ⊆ is
/// the complement dual over S∖{∅}.
template <class Set>
linear_closure_result<Set> linear_closure_analysis(const std::vector<Set>& S, order_relation order, std::size_t n) {
  if (order == order_relation::subset_of) {
    auto r = linear_closure_analysis(detail::complement_all(S, n), order_relation::superset_of, n);
    r.closure = detail::complement_all(r.closure, n);
    detail::canonical_sort(r.closure);
    return r;
  }
  const Set omega = Set::full(n);
  std::vector<Set> out;
  std::unordered_set<Set> seen;
  Set running_union{};
  Set running_meet = omega;
  std::size_t scanned = 0;
  for (const auto& A : detail::dedup(S)) {
    if (A == omega) {
      if (seen.insert(A).second) out.push_back(A);
      continue;
    }
    const Set overlap = running_union & A;
    if (overlap.count() > 1) return {};
    if (seen.insert(A).second) out.push_back(A);
    if (!overlap.empty() && seen.insert(overlap).second) out.push_back(overlap);
    running_union |= A;
    running_meet &= A;
    ++scanned;
  }
  if (scanned >= 2 && running_meet.empty() && seen.insert(Set{}).second) out.push_back(Set{});
  detail::canonical_sort(out);
  return {std::move(out), true};
}

template <class Set>
struct consonance_result {
  bool is_consonant = false;
  std::vector<Set> sorted;  // S in canonical order
};

template <class Set>
consonance_result<Set> consonance_check(const std::vector<Set>& S) {
  consonance_result<Set> r{true, detail::dedup(S)};
  detail::canonical_sort(r.sorted);
  for (std::size_t k = 1; k < r.sorted.size(); ++k)
    if (!r.sorted[k - 1].is_subset_of(r.sorted[k])) r.is_consonant = false;
  return r;
}

/// ι(S) for order ⊇: for each state ω covered by S, the intersection of the
/// elements of S containing ω. For order ⊆ the dual iotas ῑ(S), computed as
/// the complements of ι of the complemented family. Deduplicated, canonical
/// order.
template <class Set>
std::vector<Set> iota_elements(const std::vector<Set>& S, order_relation order, std::size_t n) {
  if (order == order_relation::subset_of) {
    auto out = detail::complement_all(iota_elements(detail::complement_all(S, n), order_relation::superset_of, n), n);
    detail::canonical_sort(out);
    return out;
  }
  std::vector<Set> out;
  std::unordered_set<Set> seen;
  for (std::size_t w = 0; w < n; ++w) {
    bool included = false;
    Set meet = Set::full(n);
    for (const auto& F : S) {
      if (F.test(w)) {
        meet &= F;
        included = true;
      }
    }
    if (included && seen.insert(meet).second) out.push_back(meet);
  }
  detail::canonical_sort(out);
  return out;
}

/// Starting from S, adds A∪i (order ⊇) or A∩i (order ⊆) for every iota i and
/// every A gathered so far. With ι(S) and ⊇ this is the part of the generated
/// sublattice above some element of S; with ῑ(S) and ⊆ the part below.
template <class Set>
std::vector<Set> lattice_support_closure(const std::vector<Set>& iotas, const std::vector<Set>& S,
                                         order_relation order) {
  std::vector<Set> out = detail::dedup(S);
  std::unordered_set<Set> seen(out.begin(), out.end());
  for (const auto& i : iotas) {
    const std::size_t before = out.size();
    for (std::size_t k = 0; k < before; ++k) {
      const Set c = order == order_relation::superset_of ? (out[k] | i) : (out[k] & i);
      if (seen.insert(c).second) out.push_back(c);
    }
  }
  detail::canonical_sort(out);
  return out;
}

enum class iota_order { ascending, descending };

/// Sort by cardinality, ties by word value.
template <class Set>
std::vector<Set> order_iotas(std::vector<Set> iotas, iota_order mode) {
  std::stable_sort(iotas.begin(), iotas.end(), [&](const Set& a, const Set& b) {
    return mode == iota_order::ascending ? canonical_less(a, b) : canonical_less(b, a);
  });
  return iotas;
}

namespace detail {

template <class Set>
std::vector<Set> kernel_iotas(const std::vector<Set>& S, order_relation order, std::size_t n) {
  return order_iotas(iota_elements(S, order, n),
                     order == order_relation::superset_of ? iota_order::ascending : iota_order::descending);
}

// The part of the generated sublattice the transformed function lives on:
// below the support for ⊇ (commonality-like), above it for ⊆.
template <class Set>
std::vector<Set> lattice_nodes(const std::vector<Set>& S, order_relation order, std::size_t n) {
  const order_relation other = dual(order);
  return lattice_support_closure(iota_elements(S, other, n), S, other);
}

template <class Set>
std::vector<Set> full_powerset(std::size_t n) {
  if (n > fmt_width_limit)
    throw error(error_code::frame_too_large, "fmt scheme over " + std::to_string(n) + " states");
  std::vector<Set> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w) out.push_back(Set::from_word(w));
  return out;
}

template <class Set>
focal_structure<Set> base_structure(const std::vector<Set>& S, std::size_t n, order_relation order) {
  if (S.empty()) throw error(error_code::empty_support, "support is empty");
  const Set omega = Set::full(n);
  for (const auto& s : S)
    if (!s.is_subset_of(omega)) throw error(error_code::width_mismatch, "support element outside the frame");
  focal_structure<Set> fs;
  fs.order = order;
  fs.width = n;
  fs.support = dedup(S);
  canonical_sort(fs.support);
  fs.iotas = kernel_iotas(fs.support, order, n);
  return fs;
}

}  // namespace detail

/// Scheme selection: consonant support, then the linear quasi-Bayesian test,
/// then the semilattice closure while |S| ≤ c·|Ω|, else the lattice support.
template <class Set>
focal_structure<Set> analyze(const std::vector<Set>& S, std::size_t n, order_relation order,
                             const scheme_thresholds& thresholds = {}) {
  auto fs = detail::base_structure(S, n, order);
  auto cons = consonance_check(fs.support);
  if (cons.is_consonant) {
    fs.is_consonant = true;
    fs.closure = std::move(cons.sorted);
    fs.chosen = scheme::consonant;
    return fs;
  }
  auto lin = linear_closure_analysis(fs.support, order, n);
  fs.is_almost_bayesian = lin.is_almost_bayesian;
  if (lin.is_almost_bayesian) {
    fs.closure = std::move(lin.closure);
    fs.chosen = scheme::order_agnostic;
  } else if (static_cast<double>(fs.support.size()) <= thresholds.c * static_cast<double>(n)) {
    fs.closure = closure(fs.support, order);
    fs.chosen = scheme::semilattice;
  } else {
    fs.closure = detail::lattice_nodes(fs.support, order, n);
    fs.chosen = scheme::lattice_support;
  }
  return fs;
}

/// Builds the node family for a caller-chosen scheme.
template <class Set>
focal_structure<Set> analyze_with(const std::vector<Set>& S, std::size_t n, order_relation order, scheme forced) {
  auto fs = detail::base_structure(S, n, order);
  auto cons = consonance_check(fs.support);
  fs.is_consonant = cons.is_consonant;
  fs.chosen = forced;
  switch (forced) {
    case scheme::consonant:
      if (!cons.is_consonant) throw error(error_code::not_consonant, "support is not a nested chain");
      fs.closure = std::move(cons.sorted);
      break;
    case scheme::order_agnostic: {
      auto lin = linear_closure_analysis(fs.support, order, n);
      fs.is_almost_bayesian = lin.is_almost_bayesian;
      fs.closure = lin.is_almost_bayesian ? std::move(lin.closure) : closure(fs.support, order);
      break;
    }
    case scheme::semilattice:
      fs.closure = closure(fs.support, order);
      break;
    case scheme::lattice_support:
      fs.closure = detail::lattice_nodes(fs.support, order, n);
      break;
    case scheme::fmt:
      fs.closure = detail::full_powerset<Set>(n);
      break;
  }
  return fs;
}

}  // namespace emt
