#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace comasslab {

// Strictly increasing tuple of 1-based coordinate indices; the canonical key
// for a basis p-covector e_{i1} ^ ... ^ e_{ip}. Degree 0 (empty tuple) is the
// scalar basis element.
class MultiIndex {
 public:
  MultiIndex() = default;
  // Validates strict increase and positivity; raises Errc::invalid_argument.
  explicit MultiIndex(std::vector<int> entries);

  int degree() const { return static_cast<int>(entries_.size()); }
  const std::vector<int>& entries() const { return entries_; }
  int max_entry() const { return entries_.empty() ? 0 : entries_.back(); }
  bool contains(int i) const;

  // Complementary index inside {1..n}; raises if any entry exceeds n.
  MultiIndex complement(int n) const;

  // Sign of the permutation sorting the concatenation (*this, other) — i.e.
  // parity of the number of inversions across the two blocks. Returns nullopt
  // when the tuples share an entry (the wedge of the basis elements vanishes);
  // otherwise {merged sorted index, +1 or -1}.
  std::optional<std::pair<MultiIndex, int>> merge_sign(const MultiIndex& other) const;

  // Sign of the permutation (entries, complement entries) of {1..n}; the
  // coefficient transport rule for the Hodge star.
  int complement_sign(int n) const;

  std::string to_string() const;  // e.g. "[1,3,4]"

  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) = default;

 private:
  std::vector<int> entries_;
};

}  // namespace comasslab
