#pragma once

#include <string>
#include <vector>

#include "bounds.hpp"
#include "comass.hpp"
#include "covector.hpp"

namespace comasslab {

enum class CheckStatus { PASS, RETRY, FAIL };

// One wedge-inequality trial: lhs <= constant * product of factor comasses.
// margin = rhs - lhs. PASS when margin >= -tol on the first evaluation; RETRY
// when the first evaluation violated but a re-run with retry_factor x restarts
// cleared it; FAIL when the violation survives the re-run.
struct WedgeBoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double constant_used = 0.0;
  double margin = 0.0;
  std::string inputs;
  CheckStatus status = CheckStatus::PASS;
};

struct CheckConfig {
  OptimizerConfig optimizer;    // used for every comass estimate in the check
  double tol = 1e-6;            // comass estimates are lower bounds; apparent
                                // violations within tol are estimation noise
  int retry_factor = 10;        // restart multiplier for the re-run
};

const char* to_string(CheckStatus s);

// Top-degree product: a.p + b.p == a.n. The left side is exact (Euclidean
// norm of a volume-degree form); the right side is upper(n, a.p) times the
// two factor estimates.
WedgeBoundReport check_complementary(const Covector& a, const Covector& b,
                                     const BoundTable& table, const CheckConfig& cfg = {});

// General product: a.p + b.p <= n, both degrees >= 1. Both sides are
// estimates; the constant is upper(a.p + b.p, a.p).
WedgeBoundReport check_general(const Covector& a, const Covector& b, const BoundTable& table,
                               const CheckConfig& cfg = {});

// m-fold product of degree-p forms in R^{mp}: left side exact (top degree),
// constant = prod_{j=2..m} upper(j*p, p).
WedgeBoundReport check_m_fold(const std::vector<Covector>& forms, const BoundTable& table,
                              const CheckConfig& cfg = {});

// prod_{j=2..m} upper(j*p, p) as an exact rational (the m-fold constant).
Rational m_fold_constant(const BoundTable& table, int m, int p);

}  // namespace comasslab
