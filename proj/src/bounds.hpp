#pragma once

#include <optional>
#include <string>
#include <vector>

#include "comass.hpp"
#include "covector.hpp"
#include "rational.hpp"

namespace comasslab {

// One cell of the constants triangle: the best upper bound known to the lab
// for the squared Euclidean-to-comass ratio constant at (n, p), the exact
// value when the registry has one, and the tag of the rule that produced the
// current bound.
struct BoundCell {
  int n = 0;
  int p = 0;
  std::optional<Rational> exact;
  Rational upper;
  std::vector<std::string> provenance;  // EXACT, TRIVIAL_DEGREE, BINOM, PASCAL, KRULE(k), HODGE
};

// Registry of exactly known squared constants: p in {1, n-1} -> 1;
// p in {2, n-2} -> floor(n/2); (6,3) -> 4; (7,3), (7,4) -> 7; (8,4) -> 14.
// Raises on out-of-range (n, p). Absent -> nullopt.
std::optional<Rational> exact_registry(int n, int p);

// upper(n-1, p-1) + upper(n-1, p); inapplicable (nullopt) outside 1 < p < n-1.
std::optional<Rational> pascal_rule(const Rational& upper_left, const Rational& upper_right,
                                    int n, int p);

// binomial(n, p-k) / binomial(p, k) * upper(n, k); requires 1 <= k < p < n.
Rational k_rule_value(int n, int p, int k, const Rational& upper_nk);

// The triangle of cells for 2 <= n <= n_max, 1 <= p <= n-1, built to the
// fixed point of the bounding rules. All arithmetic is exact rational; no
// float drift can enter the table.
class BoundTable {
 public:
  // Initializes every cell to min(binomial(n,p), binomial(n-2,p-1)), applies
  // the exact registry, then iterates the k-rules, the Pascal rule, and Hodge
  // symmetrization until no cell changes. 2 <= n_max <= 32.
  static BoundTable build(int n_max);

  int n_max() const { return n_max_; }
  const BoundCell& cell(int n, int p) const;
  Rational upper(int n, int p) const { return cell(n, p).upper; }
  std::optional<Rational> exact(int n, int p) const { return cell(n, p).exact; }

  // One full rule pass over all cells; true when something improved.
  // build() loops this; exposed so tests can confirm the fixed point.
  bool apply_rules_pass();

  // CSV: one row per n, cells "exact:v" or "<=v (RULE)" (UTF-8 <=).
  std::string to_csv() const;
  // JSON: {"n_max": N, "cells": [{n, p, exact, upper, upper_float, provenance}]}.
  std::string to_json() const;

 private:
  explicit BoundTable(int n_max);
  BoundCell& cell_mut(int n, int p);
  bool improve(BoundCell& c, const Rational& candidate, const std::string& tag);

  int n_max_;
  std::vector<BoundCell> cells_;
};

// Configuration for the ratio lower-bound search: an outer gradient-free
// hill climb over covector coefficients (coordinate perturbations with
// decaying magnitude, accept on improvement) around an inner comass
// estimate. The returned ratio is re-scored with the stronger final_eval
// config so one-sided estimation noise accepted during the climb does not
// inflate the result.
struct SearchConfig {
  SearchConfig() {
    inner.restarts = 8;
    inner.max_iter = 200;
    final_eval.restarts = 32;
    final_eval.max_iter = 500;
  }
  int budget = 400;      // number of inner ratio evaluations spent on proposals
  double delta0 = 0.5;   // initial perturbation magnitude
  double decay = 0.9;    // per-sweep magnitude decay
  std::uint64_t seed = 42;
  OptimizerConfig inner;
  OptimizerConfig final_eval;
};

struct SearchResult {
  double ratio = 0.0;   // final re-scored ratio estimate for the witness
  Covector witness;
};

// Best-effort maximization of the Euclidean-to-comass ratio over p-covectors
// in R^n; returns the best ratio found and its witness covector (unit norm).
// `init` seeds the climb (defaults to a random dense covector).
SearchResult lower_bound_search(int n, int p, const SearchConfig& cfg,
                                const std::optional<Covector>& init = std::nullopt);

}  // namespace comasslab
