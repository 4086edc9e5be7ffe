#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "emt/error.hpp"
#include "emt/subset.hpp"

namespace emt {

/// Dynamic binary trie over subsets of a frame of `width` states.
///
/// A non-empty key K of depth d (greatest member d-1) sits at the trie
/// position reached by reading its members 0..d-2 as a bit string: at a node
/// of depth d the next bit read is bit d-1, 1 going right and 0 going left.
/// Only value-bearing positions and branch points (disjunction nodes, no value,
/// exactly two children) are materialized. Consequences used by the queries:
///   - every node in the right subtree of N is a strict superset of N.key;
///   - nodes in the left subtree of N neither contain nor are contained in it;
///   - depth strictly increases along any root-to-leaf path.
/// The empty set has no depth and lives in a separate slot.
template <class Set = subset, class Value = double>
class powerset_tree {
  struct node {
    Set key;
    std::size_t depth;
    std::optional<Value> value;
    std::unique_ptr<node> child[2];
    node* parent = nullptr;

    node(const Set& k, std::optional<Value> v) : key(k), depth(k.depth()), value(std::move(v)) {}
    int child_count() const { return (child[0] ? 1 : 0) + (child[1] ? 1 : 0); }
  };

 public:
  using key_type = Set;
  using value_type = Value;

  explicit powerset_tree(std::size_t width) : width_(width), omega_(Set::full(width)) {
    if (width == 0 || width > Set::capacity)
      throw error(error_code::width_mismatch, "tree width " + std::to_string(width) + " outside 1.." +
                                                  std::to_string(Set::capacity));
  }

  powerset_tree(const powerset_tree& o)
      : width_(o.width_), omega_(o.omega_), empty_value_(o.empty_value_), root_(clone(o.root_.get(), nullptr)),
        values_(o.values_), disjunctions_(o.disjunctions_) {}

  powerset_tree& operator=(const powerset_tree& o) {
    if (this != &o) *this = powerset_tree(o);
    return *this;
  }
  powerset_tree(powerset_tree&&) noexcept = default;
  powerset_tree& operator=(powerset_tree&&) noexcept = default;

  std::size_t width() const noexcept { return width_; }

  /// Stored values, including the empty set.
  std::size_t size() const noexcept { return values_ + (empty_value_ ? 1 : 0); }
  bool empty() const noexcept { return size() == 0; }

  /// Trie nodes, excluding the empty-set slot.
  std::size_t node_count() const noexcept { return values_ + disjunctions_; }
  std::size_t value_node_count() const noexcept { return values_; }
  std::size_t disjunction_count() const noexcept { return disjunctions_; }

  /// Stores value under key, overwriting any previous value.
  void insert(const Set& key, const Value& value) {
    check(key);
    if (key.empty()) {
      empty_value_ = value;
      return;
    }
    const std::size_t dt = key.depth();
    std::unique_ptr<node>* slot = &root_;
    node* parent = nullptr;
    for (;;) {
      node* cur = slot->get();
      if (cur == nullptr) {
        *slot = make_node(key, value, parent);
        ++values_;
        return;
      }
      const std::size_t dn = cur->depth;
      const Set diff = (cur->key ^ key).prefix(std::min(dn, dt) - 1);
      if (!diff.empty()) {
        // Strings diverge at bit p: branch at the position of depth p+1.
        const auto p = static_cast<std::size_t>(diff.lowest());
        Set branch_key = key.prefix(p);
        branch_key.set(p);
        auto branch = make_node(branch_key, std::nullopt, parent);
        auto leaf = make_node(key, value, branch.get());
        std::unique_ptr<node> old = std::move(*slot);
        old->parent = branch.get();
        const bool key_right = key.test(p);
        branch->child[key_right ? 1 : 0] = std::move(leaf);
        branch->child[key_right ? 0 : 1] = std::move(old);
        *slot = std::move(branch);
        ++values_;
        ++disjunctions_;
        return;
      }
      if (dn == dt) {
        if (!cur->value) {
          --disjunctions_;
          ++values_;
        }
        cur->value = value;
        return;
      }
      if (dn < dt) {
        parent = cur;
        slot = &cur->child[key.test(dn - 1) ? 1 : 0];
        continue;
      }
      // key's string is a proper prefix of cur's: key becomes cur's ancestor.
      auto fresh = make_node(key, value, parent);
      std::unique_ptr<node> old = std::move(*slot);
      old->parent = fresh.get();
      fresh->child[old->key.test(dt - 1) ? 1 : 0] = std::move(old);
      *slot = std::move(fresh);
      ++values_;
      return;
    }
  }

  /// Structural self-check: parent links, strictly increasing depth, branch
  /// bits, two children at every disjunction, and the cached counters.
  bool check_invariants() const {
    std::size_t values = 0, disjunctions = 0;
    return verify(root_.get(), nullptr, values, disjunctions) && values == values_ && disjunctions == disjunctions_;
  }

  /// Removes key's value. Returns false if key had none.
  bool erase(const Set& key) {
    check(key);
    if (key.empty()) {
      const bool had = empty_value_.has_value();
      empty_value_.reset();
      return had;
    }
    node* n = find_node(key, nullptr);
    if (n == nullptr || !n->value) return false;
    --values_;
    if (n->child_count() == 2) {
      n->value.reset();
      ++disjunctions_;
      return true;
    }
    node* parent = n->parent;
    if (n->child_count() == 1) {
      splice(n);
      return true;
    }
    slot_of(n).reset();
    if (parent != nullptr && !parent->value) {
      splice(parent);
      --disjunctions_;
    }
    return true;
  }

  /// Exact-key value. `visited`, if given, receives the number of trie nodes read.
  std::optional<Value> lookup(const Set& key, std::size_t* visited = nullptr) const {
    check(key);
    if (visited) *visited = 0;
    if (key.empty()) return empty_value_;
    const node* n = find_node(key, visited);
    return n ? n->value : std::nullopt;
  }

  bool contains(const Set& key) const { return lookup(key).has_value(); }

  /// Mutable access to a stored value, or nullptr.
  Value* find(const Set& key) {
    check(key);
    if (key.empty()) return empty_value_ ? &*empty_value_ : nullptr;
    node* n = find_node(key, nullptr);
    return n && n->value ? &*n->value : nullptr;
  }

  /// f(key, value) for every stored pair, the empty set first.
  template <class F>
  void for_each(F&& f) const {
    if (empty_value_) f(Set{}, *empty_value_);
    walk(root_.get(), f);
  }

  std::vector<std::pair<Set, Value>> items() const {
    std::vector<std::pair<Set, Value>> out;
    out.reserve(size());
    for_each([&](const Set& k, const Value& v) { out.emplace_back(k, v); });
    return out;
  }

  /// f(key, value) for every stored key K with K ⊇ key. No ordering contract.
  template <class F>
  void for_each_superset(const Set& key, F&& f) const {
    check(key);
    if (key.empty() && empty_value_) f(Set{}, *empty_value_);
    supersets(root_.get(), key, f);
  }

  /// f(key, value) for every stored key K with K ⊆ key. No ordering contract.
  template <class F>
  void for_each_subset(const Set& key, F&& f) const {
    check(key);
    if (empty_value_) f(Set{}, *empty_value_);
    subsets(root_.get(), key, key.depth(), f);
  }

  std::vector<std::pair<Set, Value>> supersets_of(const Set& key) const {
    std::vector<std::pair<Set, Value>> out;
    for_each_superset(key, [&](const Set& k, const Value& v) { out.emplace_back(k, v); });
    return out;
  }

  std::vector<std::pair<Set, Value>> subsets_of(const Set& key) const {
    std::vector<std::pair<Set, Value>> out;
    for_each_subset(key, [&](const Set& k, const Value& v) { out.emplace_back(k, v); });
    return out;
  }

  /// A stored superset of key of minimum cardinality. Unique when the stored
  /// family is closed under intersection. `touched` accumulates nodes read.
  std::optional<std::pair<Set, Value>> smallest_superset(const Set& key, std::size_t* touched = nullptr) const {
    check(key);
    if (key.empty() && empty_value_) {
      if (touched) ++*touched;
      return std::pair<Set, Value>{Set{}, *empty_value_};
    }
    const node* best = nullptr;
    std::size_t best_card = width_ + 1;
    const std::size_t floor = key.count();
    min_superset(root_.get(), key, floor, best, best_card, touched);
    if (!best) return std::nullopt;
    return std::pair<Set, Value>{best->key, *best->value};
  }

  /// A stored subset of key of maximum cardinality. Unique when the stored
  /// family is closed under union.
  std::optional<std::pair<Set, Value>> largest_subset(const Set& key, std::size_t* touched = nullptr) const {
    check(key);
    const node* best = nullptr;
    long best_card = empty_value_ ? 0 : -1;
    max_subset(root_.get(), key, key.depth(), key.count(), best, best_card, touched);
    if (best) return std::pair<Set, Value>{best->key, *best->value};
    if (empty_value_) {
      if (touched) ++*touched;
      return std::pair<Set, Value>{Set{}, *empty_value_};
    }
    return std::nullopt;
  }

 private:
  void check(const Set& key) const {
    if (!key.is_subset_of(omega_))
      throw error(error_code::width_mismatch, "key has members beyond the tree width " + std::to_string(width_));
  }

  static std::unique_ptr<node> make_node(const Set& key, std::optional<Value> v, node* parent) {
    auto n = std::make_unique<node>(key, std::move(v));
    n->parent = parent;
    return n;
  }

  static std::unique_ptr<node> clone(const node* src, node* parent) {
    if (!src) return nullptr;
    auto n = make_node(src->key, src->value, parent);
    n->child[0] = clone(src->child[0].get(), n.get());
    n->child[1] = clone(src->child[1].get(), n.get());
    return n;
  }

  std::unique_ptr<node>& slot_of(node* n) {
    if (!n->parent) return root_;
    return n->parent->child[0].get() == n ? n->parent->child[0] : n->parent->child[1];
  }

  // Replaces a node that has exactly one child by that child.
  void splice(node* n) {
    std::unique_ptr<node> only = std::move(n->child[0] ? n->child[0] : n->child[1]);
    only->parent = n->parent;
    slot_of(n) = std::move(only);
  }

  node* find_node(const Set& key, std::size_t* visited) const {
    const std::size_t dt = key.depth();
    node* cur = root_.get();
    while (cur) {
      if (visited) ++*visited;
      if (cur->key == key) return cur;
      const std::size_t dn = cur->depth;
      if (dn >= dt || !(cur->key ^ key).prefix(dn - 1).empty()) return nullptr;
      cur = cur->child[key.test(dn - 1) ? 1 : 0].get();
    }
    return nullptr;
  }

  static bool verify(const node* n, const node* parent, std::size_t& values, std::size_t& disjunctions) {
    if (!n) return true;
    if (n->parent != parent || n->depth == 0 || n->depth != n->key.depth()) return false;
    if (parent) {
      if (n->depth <= parent->depth) return false;
      if (!(n->key ^ parent->key).prefix(parent->depth - 1).empty()) return false;
      if (n->key.test(parent->depth - 1) != (parent->child[1].get() == n)) return false;
    }
    if (n->value)
      ++values;
    else if (++disjunctions; n->child_count() != 2)
      return false;
    return verify(n->child[0].get(), n, values, disjunctions) && verify(n->child[1].get(), n, values, disjunctions);
  }

  template <class F>
  static void walk(const node* n, F& f) {
    if (!n) return;
    if (n->value) f(n->key, *n->value);
    walk(n->child[0].get(), f);
    walk(n->child[1].get(), f);
  }

  // Every key below n agrees with n->key on bits < depth-1.
  template <class F>
  static void supersets(const node* n, const Set& key, F& f) {
    if (!n) return;
    if (!key.prefix(n->depth - 1).is_subset_of(n->key)) return;
    if (n->value && key.is_subset_of(n->key)) f(n->key, *n->value);
    if (!key.test(n->depth - 1)) supersets(n->child[0].get(), key, f);
    supersets(n->child[1].get(), key, f);
  }

  template <class F>
  static void subsets(const node* n, const Set& key, std::size_t key_depth, F& f) {
    if (!n || n->depth > key_depth) return;
    if (!n->key.prefix(n->depth - 1).is_subset_of(key)) return;
    if (n->value && n->key.is_subset_of(key)) f(n->key, *n->value);
    subsets(n->child[0].get(), key, key_depth, f);
    if (key.test(n->depth - 1)) subsets(n->child[1].get(), key, key_depth, f);
  }

  static void min_superset(const node* n, const Set& key, std::size_t floor, const node*& best,
                           std::size_t& best_card, std::size_t* touched) {
    if (!n || best_card == floor) return;
    if (touched) ++*touched;
    const Set low = n->key.prefix(n->depth - 1);
    if (!key.prefix(n->depth - 1).is_subset_of(low)) return;
    // Any key below n contains low, key, and at least one member >= depth-1.
    const Set forced = low | key;
    const std::size_t bound = forced.count() + (forced.highest() >= static_cast<int>(n->depth) - 1 ? 0 : 1);
    if (bound >= best_card) return;
    if (n->value && key.is_subset_of(n->key) && n->key.count() < best_card) {
      best = n;
      best_card = n->key.count();
    }
    if (!key.test(n->depth - 1)) min_superset(n->child[0].get(), key, floor, best, best_card, touched);
    min_superset(n->child[1].get(), key, floor, best, best_card, touched);
  }

  static void max_subset(const node* n, const Set& key, std::size_t key_depth, std::size_t ceiling,
                         const node*& best, long& best_card, std::size_t* touched) {
    if (!n || n->depth > key_depth || best_card == static_cast<long>(ceiling)) return;
    if (touched) ++*touched;
    const Set low = n->key.prefix(n->depth - 1);
    if (!low.is_subset_of(key)) return;
    const auto bound = static_cast<long>(low.count() + (key ^ key.prefix(n->depth - 1)).count());
    if (bound <= best_card) return;
    if (n->value && n->key.is_subset_of(key) && static_cast<long>(n->key.count()) > best_card) {
      best = n;
      best_card = static_cast<long>(n->key.count());
    }
    if (key.test(n->depth - 1)) max_subset(n->child[1].get(), key, key_depth, ceiling, best, best_card, touched);
    max_subset(n->child[0].get(), key, key_depth, ceiling, best, best_card, touched);
  }

  std::size_t width_;
  Set omega_;
  std::optional<Value> empty_value_;
  std::unique_ptr<node> root_;
  std::size_t values_ = 0;
  std::size_t disjunctions_ = 0;
};

}  // namespace emt
