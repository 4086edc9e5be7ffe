#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "emt/dst/mass_function.hpp"
#include "emt/error.hpp"
#include "emt/focal_structure.hpp"
#include "emt/kernels/dispatch.hpp"
#include "emt/kernels/semilattice.hpp"
#include "emt/powerset_tree.hpp"
#include "emt/transform.hpp"

namespace emt {

enum class function_kind { mass, commonality, implicability, conj_weight, disj_weight };

constexpr std::string_view to_string(function_kind k) noexcept {
  switch (k) {
    case function_kind::mass: return "mass";
    case function_kind::commonality: return "commonality";
    case function_kind::implicability: return "implicability";
    case function_kind::conj_weight: return "conj_weight";
    case function_kind::disj_weight: return "disj_weight";
  }
  return "unknown";
}

inline function_kind parse_function_kind(std::string_view s) {
  for (auto k : {function_kind::mass, function_kind::commonality, function_kind::implicability,
                 function_kind::conj_weight, function_kind::disj_weight})
    if (to_string(k) == s) return k;
  throw error(error_code::parse_error, "unknown function kind '" + std::string(s) + "'");
}

/// Order of the zeta transform linking mass to the kind: ⊇ for commonality
/// and conjunctive weights, ⊆ for implicability and disjunctive weights.
constexpr order_relation order_of(function_kind k) noexcept {
  return k == function_kind::implicability || k == function_kind::disj_weight ? order_relation::subset_of
                                                                               : order_relation::superset_of;
}

struct derive_options {
  std::optional<scheme> forced;  // automatic selection when empty
  scheme_thresholds thresholds;
};

template <class Set>
focal_structure<Set> make_structure(const std::vector<Set>& S, std::size_t n, order_relation order,
                                    const derive_options& opt) {
  return opt.forced ? analyze_with(S, n, order, *opt.forced) : analyze(S, n, order, opt.thresholds);
}

/// Commonality (order ⊇) or implicability (order ⊆) values on the nodes of a
/// focal structure. Any other set resolves through its proxy: the smallest
/// node containing it for commonality, the largest node inside it for
/// implicability.
template <class Set = subset>
class zeta_view {
 public:
  struct lookup_result {
    double value = 0;
    bool in_closure = false;
    bool defaulted = false;  // no covering node; value is 0
  };

  zeta_view(function_kind kind, frame_of_discernment frame, focal_structure<Set> structure, std::vector<double> values,
            op_counts counts = {})
      : kind_(kind),
        frame_(std::move(frame)),
        structure_(std::move(structure)),
        values_(std::move(values)),
        counts_(counts),
        index_(frame_.size()) {
    if (kind_ != function_kind::commonality && kind_ != function_kind::implicability)
      throw error(error_code::unsupported_conversion, "a zeta view holds commonality or implicability values");
    if (structure_.order != order_of(kind_))
      throw error(error_code::width_mismatch, "structure order does not match the view kind");
    if (values_.size() != structure_.closure.size())
      throw error(error_code::width_mismatch, "one value per node is required");
    if (structure_.chosen != scheme::fmt)
      for (std::size_t k = 0; k < structure_.closure.size(); ++k) index_.insert(structure_.closure[k], k);
  }

  function_kind kind() const noexcept { return kind_; }
  const frame_of_discernment& frame() const noexcept { return frame_; }
  const focal_structure<Set>& structure() const noexcept { return structure_; }
  const std::vector<double>& values() const noexcept { return values_; }
  const op_counts& counts() const noexcept { return counts_; }
  transform_spec spec() const noexcept { return {structure_.order, combine_op::additive, direction::zeta}; }

  lookup_result lookup(const Set& s) const {
    if (structure_.chosen == scheme::fmt) return {values_.at(s.word(0)), true, false};
    if (auto k = index_.lookup(s)) return {values_[*k], true, false};
    const auto proxy = kind_ == function_kind::commonality ? index_.smallest_superset(s) : index_.largest_subset(s);
    if (!proxy) return {0.0, false, true};
    return {values_[proxy->second], false, false};
  }

  double operator()(const Set& s) const { return lookup(s).value; }

  /// (node, value) pairs in canonical order.
  std::vector<std::pair<Set, double>> items() const {
    std::vector<std::pair<Set, double>> out;
    for (std::size_t k = 0; k < values_.size(); ++k) out.emplace_back(structure_.closure[k], values_[k]);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
    return out;
  }

 private:
  function_kind kind_;
  frame_of_discernment frame_;
  focal_structure<Set> structure_;
  std::vector<double> values_;
  op_counts counts_;
  powerset_tree<Set, std::size_t> index_;
};

/// Conjunctive or disjunctive weights. Sets not stored have weight 1.
/// Conventions: q(B) = ∏_{A ⊇ B} w(A)^-1 and b(B) = ∏_{A ⊆ B} v(A)^-1.
template <class Set = subset>
class weight_function {
 public:
  weight_function(function_kind kind, frame_of_discernment frame) : kind_(kind), frame_(std::move(frame)), w_(frame_.size()) {
    if (kind_ != function_kind::conj_weight && kind_ != function_kind::disj_weight)
      throw error(error_code::unsupported_conversion, "a weight function holds conjunctive or disjunctive weights");
  }

  function_kind kind() const noexcept { return kind_; }
  const frame_of_discernment& frame() const noexcept { return frame_; }

  /// Weights within zero_tolerance of 1 are not stored; zero weights are rejected.
  void set(const Set& s, double w) {
    if (w == 0.0) throw error(error_code::zero_divisor, "zero weight at " + frame_.format(s), detail::members(s));
    if (std::abs(w - 1.0) <= zero_tolerance)
      w_.erase(s);
    else
      w_.insert(s, w);
  }

  double operator()(const Set& s) const { return w_.lookup(s).value_or(1.0); }

  std::vector<std::pair<Set, double>> items() const {
    auto out = w_.items();
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
    return out;
  }

  std::size_t size() const noexcept { return w_.size(); }
  const op_counts& counts() const noexcept { return counts_; }
  void set_counts(const op_counts& c) { counts_ = c; }

 private:
  function_kind kind_;
  frame_of_discernment frame_;
  powerset_tree<Set, double> w_;
  op_counts counts_;
};

template <class Set>
using representation = std::variant<mass_function<Set>, zeta_view<Set>, weight_function<Set>>;

template <class Set>
function_kind kind_of(const representation<Set>& r) {
  if (std::holds_alternative<mass_function<Set>>(r)) return function_kind::mass;
  if (auto* z = std::get_if<zeta_view<Set>>(&r)) return z->kind();
  return std::get<weight_function<Set>>(r).kind();
}

/// q = zeta(m, ⊇, +) or b = zeta(m, ⊆, +) on the focal points of supp(m).
template <class Set>
zeta_view<Set> zeta_of_mass(const mass_function<Set>& m, function_kind target, const derive_options& opt = {}) {
  const auto support = m.support();
  if (support.empty()) throw error(error_code::empty_support, "mass function has no focal set");
  auto fs = make_structure(support, m.width(), order_of(target), opt);
  std::vector<double> values;
  values.reserve(fs.closure.size());
  for (const auto& x : fs.closure) values.push_back(m(x));
  op_counts counts;
  run_transform(fs, values, {fs.order, combine_op::additive, direction::zeta}, &counts);
  return zeta_view<Set>(target, m.frame(), std::move(fs), std::move(values), counts);
}

template <class Set>
zeta_view<Set> commonality(const mass_function<Set>& m, const derive_options& opt = {}) {
  return zeta_of_mass(m, function_kind::commonality, opt);
}

template <class Set>
zeta_view<Set> implicability(const mass_function<Set>& m, const derive_options& opt = {}) {
  return zeta_of_mass(m, function_kind::implicability, opt);
}

/// m = möbius(q, ⊇, +) or möbius(b, ⊆, +), reusing the view's structure.
/// Masses within zero_tolerance of 0 are dropped.
template <class Set>
mass_function<Set> mass(const zeta_view<Set>& view, op_counts* counts = nullptr) {
  std::vector<double> values = view.values();
  run_transform(view.structure(), values, view.spec().inverse(), counts);
  mass_function<Set> m(view.frame());
  for (std::size_t k = 0; k < values.size(); ++k)
    if (std::abs(values[k]) > zero_tolerance) m.set(view.structure().closure[k], values[k]);
  return m;
}

/// Conjunctive weights from q (or disjunctive from b): the multiplicative
/// Möbius transform of 1/q on the view's nodes. Requires Ω (resp. ∅) among the
/// nodes and no zero value on them.
template <class Set>
weight_function<Set> weights(const zeta_view<Set>& view, op_counts* counts = nullptr) {
  const auto& fs = view.structure();
  const bool conj = view.kind() == function_kind::commonality;
  const Set boundary = conj ? Set::full(fs.width) : Set{};
  if (!view.lookup(boundary).in_closure)
    throw error(error_code::support_condition,
                conj ? "conjunctive weights need Ω in the support" : "disjunctive weights need ∅ in the support");
  std::vector<double> values;
  values.reserve(fs.closure.size());
  for (std::size_t k = 0; k < fs.closure.size(); ++k) {
    if (view.values()[k] == 0.0)
      throw error(error_code::zero_divisor, "zero " + std::string(to_string(view.kind())) + " at " +
                                                view.frame().format(fs.closure[k]),
                  detail::members(fs.closure[k]));
    values.push_back(1.0 / view.values()[k]);
  }
  op_counts local;
  run_transform(fs, values, {fs.order, combine_op::multiplicative, direction::moebius}, &local);
  if (counts) *counts += local;
  weight_function<Set> w(conj ? function_kind::conj_weight : function_kind::disj_weight, view.frame());
  for (std::size_t k = 0; k < values.size(); ++k) w.set(fs.closure[k], values[k]);
  w.set_counts(local);
  return w;
}

/// q (or b) from weights: 1 / (multiplicative zeta of w) on the focal points of
/// the non-unit weights together with Ω (resp. ∅).
template <class Set>
zeta_view<Set> zeta_of_weights(const weight_function<Set>& w, const derive_options& opt = {}) {
  const bool conj = w.kind() == function_kind::conj_weight;
  const std::size_t n = w.frame().size();
  std::vector<Set> support{conj ? Set::full(n) : Set{}};
  for (const auto& [s, v] : w.items()) support.push_back(s);
  auto fs = make_structure(support, n, conj ? order_relation::superset_of : order_relation::subset_of, opt);
  std::vector<double> values;
  values.reserve(fs.closure.size());
  for (const auto& x : fs.closure) values.push_back(w(x));
  op_counts counts;
  run_transform(fs, values, {fs.order, combine_op::multiplicative, direction::zeta}, &counts);
  for (auto& v : values) v = 1.0 / v;
  return zeta_view<Set>(conj ? function_kind::commonality : function_kind::implicability, w.frame(), std::move(fs),
                        std::move(values), counts);
}

/// One conversion step along m↔q, m↔b, q↔w, b↔v.
template <class Set>
representation<Set> derive(const representation<Set>& source, function_kind target, const derive_options& opt = {}) {
  const function_kind from = kind_of(source);
  auto unsupported = [&]() -> representation<Set> {
    throw error(error_code::unsupported_conversion,
                "no direct conversion " + std::string(to_string(from)) + " -> " + std::string(to_string(target)));
  };
  if (from == target) return source;
  switch (from) {
    case function_kind::mass:
      if (target == function_kind::commonality || target == function_kind::implicability)
        return zeta_of_mass(std::get<mass_function<Set>>(source), target, opt);
      return unsupported();
    case function_kind::commonality:
    case function_kind::implicability: {
      const auto& z = std::get<zeta_view<Set>>(source);
      if (target == function_kind::mass) return mass(z);
      if ((from == function_kind::commonality && target == function_kind::conj_weight) ||
          (from == function_kind::implicability && target == function_kind::disj_weight))
        return weights(z);
      return unsupported();
    }
    case function_kind::conj_weight:
    case function_kind::disj_weight:
      if ((from == function_kind::conj_weight && target == function_kind::commonality) ||
          (from == function_kind::disj_weight && target == function_kind::implicability))
        return zeta_of_weights(std::get<weight_function<Set>>(source), opt);
      return unsupported();
  }
  return unsupported();
}

/// Conversion route between two kinds over the graph
/// conj_weight – commonality – mass – implicability – disj_weight.
inline std::vector<function_kind> conversion_path(function_kind from, function_kind to) {
  static constexpr function_kind line[] = {function_kind::conj_weight, function_kind::commonality, function_kind::mass,
                                           function_kind::implicability, function_kind::disj_weight};
  auto pos = [](function_kind k) { return static_cast<int>(std::find(std::begin(line), std::end(line), k) - line); };
  std::vector<function_kind> out;
  const int a = pos(from), b = pos(to), step = a <= b ? 1 : -1;
  for (int i = a; i != b; i += step) out.push_back(line[i + step]);
  return out;
}

/// pl(A) = 1 - b(Ω∖A) for normalized m, b(Ω) - b(Ω∖A) otherwise.
template <class Set>
double plausibility(const zeta_view<Set>& b, const Set& A, bool normalized) {
  if (b.kind() != function_kind::implicability)
    throw error(error_code::unsupported_conversion, "plausibility needs an implicability view");
  const std::size_t n = b.frame().size();
  const double top = normalized ? 1.0 : b(Set::full(n));
  return top - b(A.complement(n));
}

template <class Set>
double plausibility(const mass_function<Set>& m, const Set& A, const derive_options& opt = {}) {
  return plausibility(implicability(m, opt), A, m.normalized());
}

template <class Set>
struct boundary_result {
  zeta_view<Set> view;
  std::size_t explicit_nodes = 0;  // nodes transformed before the boundary value is folded in
  bool applied = false;
};

/// Commonality (order ⊇) with Ω ∈ supp(m), or implicability (order ⊆) with
/// ∅ ∈ supp(m): transforms on the focal points of supp(m) without that
/// element, then adds its mass to every node and appends it. Falls back to
/// the plain computation when the element is not focal.
template <class Set>
boundary_result<Set> boundary_trick(const mass_function<Set>& m, order_relation order, const derive_options& opt = {}) {
  const std::size_t n = m.width();
  const function_kind kind = order == order_relation::superset_of ? function_kind::commonality : function_kind::implicability;
  const Set boundary = order == order_relation::superset_of ? Set::full(n) : Set{};
  const double folded = m(boundary);
  if (folded == 0.0 || opt.forced == scheme::fmt) {
    auto view = zeta_of_mass(m, kind, opt);
    const std::size_t nodes = view.structure().closure.size();
    return {std::move(view), nodes, false};
  }

  std::vector<Set> rest;
  for (const auto& s : m.support())
    if (s != boundary) rest.push_back(s);

  std::vector<std::pair<Set, double>> nodes;
  op_counts counts;
  std::size_t explicit_nodes = 0;
  std::optional<scheme> chosen;
  if (!rest.empty()) {
    auto fs = make_structure(rest, n, order, opt);
    std::vector<double> values;
    for (const auto& x : fs.closure) values.push_back(m(x));
    run_transform(fs, values, {order, combine_op::additive, direction::zeta}, &counts);
    explicit_nodes = fs.closure.size();
    chosen = fs.chosen;
    for (std::size_t k = 0; k < values.size(); ++k) nodes.emplace_back(fs.closure[k], values[k] + folded);
  }
  nodes.emplace_back(boundary, folded);
  std::sort(nodes.begin(), nodes.end(), [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });

  focal_structure<Set> fs;
  fs.order = order;
  fs.width = n;
  fs.support = m.support();
  for (const auto& [s, v] : nodes) fs.closure.push_back(s);
  fs.iotas = detail::kernel_iotas(fs.closure, order, n);
  fs.is_consonant = consonance_check(fs.closure).is_consonant;
  // The folded family stays closed under the order's meet; a lattice-support
  // family gains the boundary outside its iota range, so the semilattice
  // kernel serves its inverse.
  if (fs.is_consonant)
    fs.chosen = scheme::consonant;
  else if (chosen == scheme::order_agnostic)
    fs.chosen = scheme::order_agnostic;
  else
    fs.chosen = scheme::semilattice;
  std::vector<double> values;
  for (const auto& [s, v] : nodes) values.push_back(v);
  return {zeta_view<Set>(kind, m.frame(), std::move(fs), std::move(values), counts), explicit_nodes, true};
}

}  // namespace emt
