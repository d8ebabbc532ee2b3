#pragma once

#include <cstdint>
#include <vector>

#include "covector.hpp"
#include "frame.hpp"

namespace comasslab {

// Configuration for the projected-ascent comass estimator. Defaults are the
// validated settings; every tolerance is pinned here, not at call sites.
struct OptimizerConfig {
  int restarts = 64;
  int max_iter = 500;
  double grad_tol = 1e-9;        // converged when the Riemannian gradient norm drops below
  double step_tol = 1e-12;       // ... or the accepted step length does
  double armijo_c1 = 1e-4;       // sufficient-increase slope for backtracking
  double tie_tol = 1e-12;        // witness = first restart within tie_tol of the best value
  std::uint64_t seed = 42;
  int threads = 1;               // restarts evaluated in parallel; result independent of threads
};

struct ComassEstimate {
  explicit ComassEstimate(Frame w) : witness(std::move(w)) {}

  double lower_bound = 0.0;      // evaluate_on_frame(input, witness), recomputed on the raw input
  Frame witness;
  int restarts_used = 0;
  long long iterations = 0;      // ascent iterations summed over restarts
  int converged_restarts = 0;
  double converged_fraction() const {
    return restarts_used == 0 ? 1.0 : static_cast<double>(converged_restarts) / restarts_used;
  }
};

// Closed-form comass for the degrees that admit one:
//   p == 0 or p == n: absolute value of the single coefficient;
//   p == 1 or p == n-1: the Euclidean norm (all such covectors are simple);
//   p == 2: largest canonical pair value of the skew coefficient matrix.
// Raises Errc::unsupported_degree otherwise.
double comass_exact(const Covector& a);

// Canonical pair values of a 2-covector's skew matrix: the floor(n/2)
// deduplicated singular values (sorted descending). Exposed for tests and the
// p == 2 cross-check.
std::vector<double> skew_pair_values(const Covector& a);

// True when comass_exact covers this bidegree.
bool comass_exact_supported(int n, int p);

// Projected gradient ascent over orthonormal p-frames with deterministic
// random restarts. The input is normalized internally, so the estimate scales
// exactly with the input; the reported lower_bound re-evaluates the original
// covector on the witness frame, making it a certified lower bound for the
// comass up to the roundoff of that single evaluation. Requires 1 <= p <= n
// (at p == n the objective is the volume coefficient times det, so every
// restart is immediately stationary).
ComassEstimate comass_estimate(const Covector& a, const OptimizerConfig& cfg = {});

// euclidean_norm(a) / comass_estimate(a).lower_bound; raises on the zero
// covector or a non-positive estimate.
double ratio_estimate(const Covector& a, const OptimizerConfig& cfg = {});

// Deterministic per-restart seed stream (splitmix64 derivation).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace comasslab
