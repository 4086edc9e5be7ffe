#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "emt/dst/mass_function.hpp"
#include "emt/dst/views.hpp"
#include "emt/error.hpp"
#include "emt/frame.hpp"

namespace emt {

/// A set function written out as labelled focal elements:
///
///   {"fod": ["a","b","c"], "function_kind": "mass", "normalized": true,
///    "focal_elements": [{"set": ["a"], "value": 0.5}, ...]}
///
/// "scheme" and "op_counts" are optional and only written by the tools.
struct evidence_document {
  std::vector<std::string> fod;
  function_kind kind = function_kind::mass;
  bool normalized = false;
  std::vector<std::pair<std::vector<std::string>, double>> focal_elements;
  std::optional<std::string> scheme;
  std::optional<op_counts> counts;

  friend bool operator==(const evidence_document& a, const evidence_document& b) {
    return a.fod == b.fod && a.kind == b.kind && a.normalized == b.normalized &&
           a.focal_elements == b.focal_elements && a.scheme == b.scheme;
  }
};

inline double neutral_value(function_kind k) {
  return k == function_kind::conj_weight || k == function_kind::disj_weight ? 1.0 : 0.0;
}

/// Labels inside each set in frame order; sets by cardinality, then by word value.
inline void canonicalize(evidence_document& doc) {
  const frame_of_discernment frame(doc.fod, 1 << 16);
  auto rank = [&](const std::vector<std::string>& labels) {
    std::vector<std::size_t> idx;
    for (const auto& l : labels) idx.push_back(frame.index_of(l));
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return idx;
  };
  for (auto& [labels, v] : doc.focal_elements) {
    std::vector<std::string> sorted;
    for (auto i : rank(labels)) sorted.push_back(frame.label(i));
    labels = std::move(sorted);
  }
  std::stable_sort(doc.focal_elements.begin(), doc.focal_elements.end(), [&](const auto& a, const auto& b) {
    auto ia = rank(a.first), ib = rank(b.first);
    if (ia.size() != ib.size()) return ia.size() < ib.size();
    // Word order: the greatest differing member decides.
    return std::lexicographical_compare(ia.rbegin(), ia.rend(), ib.rbegin(), ib.rend());
  });
}

inline evidence_document parse_document(const nlohmann::json& j) {
  try {
    evidence_document doc;
    doc.fod = j.at("fod").get<std::vector<std::string>>();
    doc.kind = parse_function_kind(j.at("function_kind").get<std::string>());
    doc.normalized = j.value("normalized", false);
    if (j.contains("scheme")) doc.scheme = j.at("scheme").get<std::string>();
    const frame_of_discernment frame(doc.fod, 1 << 16);
    std::set<std::vector<std::size_t>> seen;
    for (const auto& fe : j.at("focal_elements")) {
      auto labels = fe.at("set").get<std::vector<std::string>>();
      const double value = fe.at("value").get<double>();
      std::vector<std::size_t> idx;
      for (const auto& l : labels) idx.push_back(frame.index_of(l));
      std::sort(idx.begin(), idx.end());
      idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
      if (!seen.insert(idx).second) throw error(error_code::parse_error, "set listed twice in focal_elements");
      if (value == neutral_value(doc.kind))
        throw error(error_code::parse_error, "focal element carries the neutral value of its kind");
      doc.focal_elements.emplace_back(std::move(labels), value);
    }
    canonicalize(doc);
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw error(error_code::parse_error, e.what());
  }
}

inline evidence_document parse_document(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw error(error_code::parse_error, e.what());
  }
  return parse_document(j);
}

inline nlohmann::json to_json(evidence_document doc) {
  canonicalize(doc);
  nlohmann::json j;
  j["fod"] = doc.fod;
  j["function_kind"] = std::string(to_string(doc.kind));
  j["normalized"] = doc.normalized;
  j["focal_elements"] = nlohmann::json::array();
  for (const auto& [labels, v] : doc.focal_elements) j["focal_elements"].push_back({{"set", labels}, {"value", v}});
  if (doc.scheme) j["scheme"] = *doc.scheme;
  if (doc.counts)
    j["op_counts"] = {{"combines", doc.counts->combines},
                      {"proxy_searches", doc.counts->proxy_searches},
                      {"proxy_touched", doc.counts->proxy_touched}};
  return j;
}

template <class Set>
std::vector<std::pair<Set, double>> encode_elements(const frame_of_discernment& frame, const evidence_document& doc) {
  std::vector<std::pair<Set, double>> out;
  for (const auto& [labels, v] : doc.focal_elements) out.emplace_back(frame.encode<Set>(labels), v);
  return out;
}

/// Reads a document into the matching representation. Commonality and
/// implicability values are placed on the focal points of the listed family;
/// a focal point that is not listed takes the value of its proxy among the
/// listed sets.
template <class Set>
representation<Set> to_representation(const evidence_document& doc, const derive_options& opt = {}) {
  frame_of_discernment frame(doc.fod, Set::capacity);
  auto elements = encode_elements<Set>(frame, doc);
  switch (doc.kind) {
    case function_kind::mass:
      return mass_function<Set>(frame, elements, doc.normalized ? std::optional<bool>(true) : std::nullopt);
    case function_kind::conj_weight:
    case function_kind::disj_weight: {
      weight_function<Set> w(doc.kind, frame);
      for (const auto& [s, v] : elements) w.set(s, v);
      return w;
    }
    case function_kind::commonality:
    case function_kind::implicability: {
      if (elements.empty()) throw error(error_code::empty_support, "no values listed");
      std::vector<Set> family;
      powerset_tree<Set, double> listed(frame.size());
      for (const auto& [s, v] : elements) {
        family.push_back(s);
        listed.insert(s, v);
      }
      auto fs = make_structure(family, frame.size(), order_of(doc.kind), opt);
      std::vector<double> values;
      for (const auto& x : fs.closure) {
        auto p = doc.kind == function_kind::commonality ? listed.smallest_superset(x) : listed.largest_subset(x);
        values.push_back(p ? p->second : 0.0);
      }
      return zeta_view<Set>(doc.kind, frame, std::move(fs), std::move(values));
    }
  }
  throw error(error_code::parse_error, "unknown function kind");
}

/// Writes a representation; entries equal to the kind's neutral value are omitted.
template <class Set>
evidence_document to_document(const representation<Set>& r) {
  evidence_document doc;
  doc.kind = kind_of(r);
  std::vector<std::pair<Set, double>> items;
  const frame_of_discernment* frame = nullptr;
  if (auto* m = std::get_if<mass_function<Set>>(&r)) {
    frame = &m->frame();
    items = m->focal_elements();
    doc.normalized = m->normalized();
  } else if (auto* z = std::get_if<zeta_view<Set>>(&r)) {
    frame = &z->frame();
    items = z->items();
    doc.scheme = std::string(to_string(z->structure().chosen));
    doc.counts = z->counts();
  } else {
    const auto& w = std::get<weight_function<Set>>(r);
    frame = &w.frame();
    items = w.items();
    doc.counts = w.counts();
  }
  doc.fod = frame->labels();
  for (const auto& [s, v] : items)
    if (v != neutral_value(doc.kind)) doc.focal_elements.emplace_back(frame->decode(s), v);
  return doc;
}

}  // namespace emt
