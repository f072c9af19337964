#pragma once

#include <string>
#include <utility>
#include <vector>

namespace tgc {

// Map from name to value that preserves insertion order.  Declaration order
// is semantically relevant in several places (instance listings, obligation
// order, report layout), so std::map is not a substitute.  Linear lookup is
// fine at the scales involved.
template <typename V>
class OrderedMap {
 public:
  using Entry = std::pair<std::string, V>;

  bool contains(const std::string& key) const { return find(key) != nullptr; }

  const V* find(const std::string& key) const {
    for (const auto& e : entries_)
      if (e.first == key) return &e.second;
    return nullptr;
  }

  V* find(const std::string& key) {
    for (auto& e : entries_)
      if (e.first == key) return &e.second;
    return nullptr;
  }

  // Returns false (and leaves the map unchanged) if the key is present.
  bool insert(const std::string& key, V value) {
    if (contains(key)) return false;
    entries_.emplace_back(key, std::move(value));
    return true;
  }

  void insert_or_assign(const std::string& key, V value) {
    if (V* v = find(key)) {
      *v = std::move(value);
      return;
    }
    entries_.emplace_back(key, std::move(value));
  }

  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  auto begin() { return entries_.begin(); }
  auto end() { return entries_.end(); }

  std::vector<std::string> keys() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.first);
    return out;
  }

 private:
  std::vector<Entry> entries_;
};

}  // namespace tgc
