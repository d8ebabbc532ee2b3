#include "multi_index.hpp"

#include <algorithm>

#include "errors.hpp"

namespace comasslab {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] < 1)
      raise(Errc::invalid_argument,
            "multi-index entry " + std::to_string(entries_[i]) + " at position " +
                std::to_string(i) + " is not a positive coordinate index");
    if (i > 0 && entries_[i] <= entries_[i - 1])
      raise(Errc::invalid_argument,
            "multi-index " + to_string() + " is not strictly increasing at position " +
                std::to_string(i));
  }
}

bool MultiIndex::contains(int i) const {
  return std::binary_search(entries_.begin(), entries_.end(), i);
}

MultiIndex MultiIndex::complement(int n) const {
  if (max_entry() > n)
    raise(Errc::invalid_argument,
          "multi-index " + to_string() + " does not fit in dimension " + std::to_string(n));
  std::vector<int> comp;
  comp.reserve(n - degree());
  for (int i = 1; i <= n; ++i)
    if (!contains(i)) comp.push_back(i);
  return MultiIndex(std::move(comp));
}

std::optional<std::pair<MultiIndex, int>> MultiIndex::merge_sign(const MultiIndex& other) const {
  // Count inversions between the blocks while merging; each entry of `other`
  // that must hop over a tail of `*this` flips the sign once per hop.
  std::vector<int> merged;
  merged.reserve(entries_.size() + other.entries_.size());
  size_t i = 0, j = 0;
  long inversions = 0;
  while (i < entries_.size() && j < other.entries_.size()) {
    if (entries_[i] == other.entries_[j]) return std::nullopt;
    if (entries_[i] < other.entries_[j]) {
      merged.push_back(entries_[i++]);
    } else {
      inversions += static_cast<long>(entries_.size() - i);
      merged.push_back(other.entries_[j++]);
    }
  }
  while (i < entries_.size()) merged.push_back(entries_[i++]);
  while (j < other.entries_.size()) merged.push_back(other.entries_[j++]);
  return std::make_pair(MultiIndex(std::move(merged)), inversions % 2 == 0 ? 1 : -1);
}

int MultiIndex::complement_sign(int n) const {
  // Parity of the permutation (I, I^c) of (1..n): an inversion occurs for
  // every pair (a in I, b in I^c) with a > b. For entry a = entries_[k] the
  // complement entries below it number a - 1 - k.
  long inversions = 0;
  for (size_t k = 0; k < entries_.size(); ++k)
    inversions += entries_[k] - 1 - static_cast<long>(k);
  return inversions % 2 == 0 ? 1 : -1;
}

std::string MultiIndex::to_string() const {
  std::string s = "[";
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(entries_[i]);
  }
  return s + "]";
}

}  // namespace comasslab
