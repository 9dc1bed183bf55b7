#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cpm/errors.hpp"

namespace cpm {

using SymbolId = std::uint32_t;

// Dense interning of labels in first-appearance order. Equal labels map to
// equal ids and vice versa.
class SymbolTable {
 public:
  SymbolId intern(std::string_view label) {
    auto it = index_.find(std::string(label));
    if (it != index_.end()) return it->second;
    const auto id = static_cast<SymbolId>(labels_.size());
    labels_.emplace_back(label);
    index_.emplace(labels_.back(), id);
    return id;
  }

  std::optional<SymbolId> find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  SymbolId at(std::string_view label) const {
    if (auto id = find(label)) return *id;
    throw InputError("unknown symbol '" + std::string(label) + "'");
  }

  const std::string& label(SymbolId id) const {
    if (id >= labels_.size()) throw InputError("unknown symbol id " + std::to_string(id));
    return labels_[id];
  }

  bool contains(SymbolId id) const noexcept { return id < labels_.size(); }
  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  friend bool operator==(const SymbolTable& a, const SymbolTable& b) { return a.labels_ == b.labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, SymbolId> index_;
};

}  // namespace cpm
