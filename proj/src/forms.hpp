#pragma once

#include <array>
#include <random>

#include "covector.hpp"

namespace comasslab {

// Parameters of the special Lagrangian family of 3-covectors on R^6. No
// constraints at construction; the canonical-form side conditions and the
// comass-1 criterion are separate predicates so non-canonical test forms can
// be built too.
struct SpecialLagParams {
  std::array<double, 4> mu{0.0, 0.0, 0.0, 0.0};
};

// e_123 + mu1 e_156 + mu2 e_426 + mu3 e_453 + mu4 e_456, expressed on sorted
// basis covectors (the 4-2-6 and 4-5-3 terms pick up their shuffle signs).
// Euclidean norm squared is exactly 1 + mu1^2 + mu2^2 + mu3^2 + mu4^2.
Covector special_lagrangian_form(const SpecialLagParams& params);

// Comass-1 criterion for the family:
//   mu1^2 + mu2^2 + mu3^2 + mu4^2 + 2 mu1 mu2 mu3 <= 1
// Boundary-inclusive, exact float comparison (pure arithmetic predicate).
bool dadok_harvey_check(const SpecialLagParams& params);

// Canonical-form side conditions: 1 >= mu1 >= mu2 >= |mu3| and
// mu1^2 + mu4^2 <= 1.
bool special_lagrangian_canonical(const SpecialLagParams& params);

// omega_k = sum_{i=1..k} e_{2i-1,2i} in R^n. Euclidean norm sqrt(k), comass 1.
// Requires 2k <= n.
Covector symplectic_power_form(int k, int n);

// The canonical comass-1 4-covector on R^8: 14 terms with coefficients +-1,
// self-dual under the Hodge star, Euclidean norm sqrt(14). The coefficient
// list is data validated by those invariants (plus the comass estimate), not
// assumed ground truth.
Covector cayley_form();

// Random sparse covector: `terms` distinct multi-indices chosen uniformly,
// coefficients i.i.d. standard normal. Requires 1 <= terms <= binomial(n,p).
Covector random_covector(int n, int p, int terms, std::mt19937_64& rng);

// All strictly increasing p-element multi-indices in {1..n}, in
// lexicographic order. Shared by the random generator and the search code.
std::vector<MultiIndex> all_multi_indices(int n, int p);

}  // namespace comasslab
