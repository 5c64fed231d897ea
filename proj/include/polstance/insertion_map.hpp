#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace polstance {

/// String-keyed map that iterates in first-insertion order. Noun indices are
/// assigned by first appearance, so this order is part of the model contract.
template <typename V>
class InsertionMap {
public:
  using value_type = std::pair<std::string, V>;
  using const_iterator = typename std::vector<value_type>::const_iterator;
  using iterator = typename std::vector<value_type>::iterator;

  V& operator[](const std::string& key) {
    auto [it, inserted] = position_.try_emplace(key, entries_.size());
    if (inserted) entries_.emplace_back(key, V{});
    return entries_[it->second].second;
  }

  const V* find(const std::string& key) const {
    auto it = position_.find(key);
    return it == position_.end() ? nullptr : &entries_[it->second].second;
  }

  bool contains(const std::string& key) const { return position_.count(key) != 0; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  iterator begin() { return entries_.begin(); }
  iterator end() { return entries_.end(); }
  const_iterator begin() const { return entries_.begin(); }
  const_iterator end() const { return entries_.end(); }

  /// Order-sensitive equality.
  bool operator==(const InsertionMap& other) const { return entries_ == other.entries_; }

private:
  std::vector<value_type> entries_;
  std::unordered_map<std::string, std::size_t> position_;
};

}  // namespace polstance
