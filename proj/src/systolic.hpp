#pragma once

#include <string>
#include <vector>

#include "bounds.hpp"
#include "rational.hpp"

namespace comasslab {

// Surrogate bound for the lattice duality constant at Betti number b:
// exactly 1 when b == 1, else the linear Hermite-constant bound (3/2) b.
// The tighter b(1+log b)-type bound has an unspecified constant and is
// deliberately not evaluated; the source tag keeps the surrogate visible.
struct GammaBound {
  int b = 0;
  Rational value;
  std::string source;  // "EXACT_B1" | "HERMITE_LINEAR"
};

GammaBound gamma_bound(int b);  // requires b >= 1

enum class SystolicMode { Complementary, MFold };

// Constant evaluation query for the stable systolic inequalities:
// Complementary mode multiplies the (n, p) table bound by gamma^2; MFold mode
// multiplies the m-fold product constant by gamma^m and requires n == m*p.
struct SystolicQuery {
  int n = 0;
  int p = 0;
  int b = 1;
  SystolicMode mode = SystolicMode::Complementary;
  int m = 0;  // MFold only
};

struct SystolicResult {
  Rational constant;    // c_part * gamma_part
  Rational c_part;      // table-derived factor
  Rational gamma_part;  // gamma^2 (Complementary) or gamma^m (MFold)
  bool c_exact = false; // every table cell used carries an exact value
  std::vector<std::string> source_tags;
};

SystolicResult systolic_constant(const SystolicQuery& q, const BoundTable& table);

// Symbolic equality check for the complex-projective equality case: with
// s = stsys_2, vol = s^m / m!, stsys_{2m-2} = s^{m-1} / (m-1)!, the ratio
// (stsys_2 * stsys_{2m-2} / vol) / m must be exactly 1. Computed in rational
// arithmetic; requires m >= 2.
double cpm_equality_check(int m);

}  // namespace comasslab
