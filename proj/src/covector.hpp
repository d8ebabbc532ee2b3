#pragma once

#include <map>
#include <string>

#include "multi_index.hpp"

namespace comasslab {

// A p-covector on Euclidean n-space, stored sparsely as canonical basis
// coefficients keyed by strictly increasing multi-indices. Zero coefficients
// are never stored, so the term map is a canonical representative and exact
// equality of maps is equality of covectors.
class Covector {
 public:
  // Zero covector of the given bidegree. 0 <= p <= n <= 16.
  Covector(int n, int p);

  int n() const { return n_; }
  int p() const { return p_; }
  const std::map<MultiIndex, double>& terms() const { return terms_; }

  // Coefficient of the basis element e_I; 0.0 when absent.
  double coefficient(const MultiIndex& I) const;
  // Sets (or erases, when value == 0) the coefficient; validates degree/range.
  void set_coefficient(const MultiIndex& I, double value);
  void add_coefficient(const MultiIndex& I, double value);

  bool is_zero() const { return terms_.empty(); }

  // Single basis covector e_I with coefficient 1.
  static Covector basis(int n, int p, const MultiIndex& I);

  friend Covector operator+(const Covector& a, const Covector& b);
  friend Covector operator-(const Covector& a, const Covector& b);
  friend Covector operator*(double s, const Covector& a);
  friend bool operator==(const Covector& a, const Covector& b);

 private:
  void validate_index(const MultiIndex& I) const;

  int n_;
  int p_;
  std::map<MultiIndex, double> terms_;
};

// Wedge product; degrees add, overlapping-index products cancel. Raises
// Errc::dimension_mismatch when ambient dimensions differ and
// Errc::degree_overflow when p_a + p_b > n.
Covector wedge(const Covector& a, const Covector& b);

// Hodge star to the complementary degree n-p with respect to the standard
// orientation and inner product.
Covector hodge_star(const Covector& a);

// l2 norm of the canonical coefficient vector.
double euclidean_norm(const Covector& a);

}  // namespace comasslab
