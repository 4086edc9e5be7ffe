#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "emt/error.hpp"
#include "emt/frame.hpp"
#include "emt/powerset_tree.hpp"
#include "emt/subset.hpp"

namespace emt {

/// Values with magnitude at or below this are treated as zero when a derived
/// mass is stored, and weights this close to 1 as unit weights.
inline constexpr double zero_tolerance = 1e-12;

/// Tolerance on Σ m = 1 for a normalized mass function.
inline constexpr double normalization_tolerance = 1e-9;

/// Focal sets and their masses. Only nonzero masses are stored.
template <class Set = subset>
class mass_function {
 public:
  explicit mass_function(frame_of_discernment frame) : frame_(std::move(frame)), focal_(frame_.size()) {}

  /// Builds from (set, mass) pairs; repeated sets are summed. `normalized`
  /// is inferred when absent and validated when given.
  mass_function(frame_of_discernment frame, const std::vector<std::pair<Set, double>>& masses,
                std::optional<bool> normalized = std::nullopt)
      : mass_function(std::move(frame)) {
    for (const auto& [s, v] : masses) add(s, v);
    if (normalized.value_or(false)) {
      for (const auto& [s, v] : focal_elements())
        if (v < 0) throw error(error_code::invalid_mass, "negative mass at " + frame_.format(s));
      if (std::abs(total() - 1.0) > normalization_tolerance)
        throw error(error_code::invalid_mass, "masses sum to " + std::to_string(total()) + ", expected 1");
    }
    normalized_ = normalized;
  }

  const frame_of_discernment& frame() const noexcept { return frame_; }
  std::size_t width() const noexcept { return frame_.size(); }
  const powerset_tree<Set, double>& tree() const noexcept { return focal_; }

  /// Mass of s; 0 for non-focal sets.
  double operator()(const Set& s) const { return focal_.lookup(s).value_or(0.0); }

  /// Overwrites the mass of s. A zero mass removes s from the support.
  void set(const Set& s, double v) {
    if (v == 0.0)
      focal_.erase(s);
    else
      focal_.insert(s, v);
    normalized_.reset();
  }

  void add(const Set& s, double v) { set(s, (*this)(s) + v); }

  std::size_t size() const noexcept { return focal_.size(); }

  /// Focal elements in canonical order (cardinality, then word value).
  std::vector<std::pair<Set, double>> focal_elements() const {
    auto items = focal_.items();
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
    return items;
  }

  std::vector<Set> support() const {
    std::vector<Set> out;
    for (const auto& [s, v] : focal_elements()) out.push_back(s);
    return out;
  }

  double total() const {
    double sum = 0;
    focal_.for_each([&](const Set&, double v) { sum += v; });
    return sum;
  }

  /// Non-negative masses summing to 1.
  bool normalized() const {
    if (!normalized_) normalized_ = infer_normalized();
    return *normalized_;
  }

  static mass_function vacuous(const frame_of_discernment& frame) {
    return mass_function(frame, {{Set::full(frame.size()), 1.0}});
  }

 private:
  bool infer_normalized() const {
    bool nonneg = true;
    focal_.for_each([&](const Set&, double v) { nonneg = nonneg && v >= 0; });
    return nonneg && std::abs(total() - 1.0) <= normalization_tolerance;
  }

  frame_of_discernment frame_;
  powerset_tree<Set, double> focal_;
  mutable std::optional<bool> normalized_;
};

}  // namespace emt
