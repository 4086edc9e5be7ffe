#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "emt/error.hpp"
#include "emt/subset.hpp"

namespace emt {

/// Ordered alphabet of state labels. Label i maps to bit i of a subset word.
class frame_of_discernment {
 public:
  explicit frame_of_discernment(std::vector<std::string> labels, std::size_t max_width = 64)
      : labels_(std::move(labels)) {
    if (labels_.empty()) throw error(error_code::empty_frame, "frame needs at least one label");
    if (labels_.size() > max_width)
      throw error(error_code::too_many_labels, std::to_string(labels_.size()) + " labels exceed width " +
                                                   std::to_string(max_width));
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (!index_.emplace(labels_[i], i).second)
        throw error(error_code::duplicate_label, "label '" + labels_[i] + "' appears twice", {i});
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  std::size_t index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw error(error_code::unknown_label, "label '" + label + "' is not in the frame");
    return it->second;
  }

  template <class Set = subset>
  Set encode(const std::vector<std::string>& members) const {
    if (size() > Set::capacity)
      throw error(error_code::width_mismatch, "frame of " + std::to_string(size()) + " states does not fit in " +
                                                  std::to_string(Set::capacity) + " bits");
    Set s;
    for (const auto& m : members) s.set(index_of(m));
    return s;
  }

  /// Labels of the members of s, in frame order.
  template <class Set>
  std::vector<std::string> decode(const Set& s) const {
    std::vector<std::string> out;
    s.for_each_member([&](std::size_t i) { out.push_back(labels_.at(i)); });
    return out;
  }

  template <class Set = subset>
  Set omega() const {
    return Set::full(size());
  }

  /// "{a,b}" style rendering for diagnostics.
  template <class Set>
  std::string format(const Set& s) const {
    std::string out = "{";
    bool first = true;
    s.for_each_member([&](std::size_t i) {
      if (!first) out += ',';
      out += labels_.at(i);
      first = false;
    });
    return out + "}";
  }

  friend bool operator==(const frame_of_discernment& a, const frame_of_discernment& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
};

inline frame_of_discernment build_fod(std::vector<std::string> labels, std::size_t max_width = 64) {
  return frame_of_discernment(std::move(labels), max_width);
}

}  // namespace emt
