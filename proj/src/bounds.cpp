#include "bounds.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "forms.hpp"
#include "json_io.hpp"

namespace comasslab {

namespace {
void check_cell_range(int n, int p, int n_max) {
  if (n < 2 || n > n_max || p < 1 || p > n - 1)
    raise(Errc::invalid_argument,
          "cell (" + std::to_string(n) + "," + std::to_string(p) + ") outside table range");
}
}  // namespace

std::optional<Rational> exact_registry(int n, int p) {
  if (n < 2 || p < 1 || p > n - 1)
    raise(Errc::invalid_argument, "registry lookup outside 1 <= p <= n-1");
  if (p == 1 || p == n - 1) return Rational(1);
  if (p == 2 || p == n - 2) return Rational(n / 2);
  if (n == 6 && p == 3) return Rational(4);
  if (n == 7 && (p == 3 || p == 4)) return Rational(7);
  if (n == 8 && p == 4) return Rational(14);
  return std::nullopt;
}

std::optional<Rational> pascal_rule(const Rational& upper_left, const Rational& upper_right,
                                    int n, int p) {
  if (!(1 < p && p < n - 1)) return std::nullopt;
  return upper_left + upper_right;
}

Rational k_rule_value(int n, int p, int k, const Rational& upper_nk) {
  if (!(1 <= k && k < p && p < n))
    raise(Errc::invalid_argument, "k-rule requires 1 <= k < p < n");
  return binomial(n, p - k) / binomial(p, k) * upper_nk;
}

BoundTable::BoundTable(int n_max) : n_max_(n_max) {
  for (int n = 2; n <= n_max; ++n) {
    for (int p = 1; p <= n - 1; ++p) {
      BoundCell c;
      c.n = n;
      c.p = p;
      c.upper = binomial(n, p);
      c.provenance = {"BINOM"};
      // Closed form of the iterated Pascal recursion; valid on the whole row.
      improve(c, binomial(n - 2, p - 1), "PASCAL");
      if (auto ex = exact_registry(n, p)) {
        c.exact = *ex;
        c.upper = *ex;
        c.provenance = {(p == 1 || p == n - 1) ? "TRIVIAL_DEGREE" : "EXACT"};
      }
      cells_.push_back(std::move(c));
    }
  }
}

BoundTable BoundTable::build(int n_max) {
  if (n_max < 2) raise(Errc::invalid_argument, "table requires n_max >= 2");
  if (n_max > 32)
    raise(Errc::invalid_argument, "table capped at n_max = 32 (exact arithmetic guard)");
  BoundTable t(n_max);
  int passes = 0;
  while (t.apply_rules_pass()) {
    if (++passes > 100) raise(Errc::internal, "bound table failed to reach a fixed point");
  }
  return t;
}

BoundCell& BoundTable::cell_mut(int n, int p) {
  check_cell_range(n, p, n_max_);
  // Row n starts after rows 2..n-1, which hold sum_{m=2..n-1}(m-1) cells.
  const int row_start = (n - 1) * (n - 2) / 2;
  return cells_[row_start + (p - 1)];
}

const BoundCell& BoundTable::cell(int n, int p) const {
  return const_cast<BoundTable*>(this)->cell_mut(n, p);
}

bool BoundTable::improve(BoundCell& c, const Rational& candidate, const std::string& tag) {
  if (c.exact) {
    // Exact cells are frozen; a rule undercutting one would falsify the rules.
    if (candidate < *c.exact)
      raise(Errc::internal, "bounding rule " + tag + " undercuts the exact value at (" +
                                std::to_string(c.n) + "," + std::to_string(c.p) + ")");
    return false;
  }
  if (candidate < c.upper) {
    c.upper = candidate;
    c.provenance = {tag};
    return true;
  }
  return false;
}

bool BoundTable::apply_rules_pass() {
  bool changed = false;
  for (int n = 2; n <= n_max_; ++n) {
    for (int p = 1; p <= n - 1; ++p) {
      BoundCell& c = cell_mut(n, p);
      for (int k = 1; k < p; ++k)
        changed |= improve(c, k_rule_value(n, p, k, upper(n, k)), "KRULE(" + std::to_string(k) + ")");
      if (1 < p && p < n - 1) {
        auto pv = pascal_rule(upper(n - 1, p - 1), upper(n - 1, p), n, p);
        changed |= improve(c, *pv, "PASCAL");
      }
      changed |= improve(c, upper(n, n - p), "HODGE");
    }
  }
  return changed;
}

std::string BoundTable::to_csv() const {
  std::string out = "n\\p";
  for (int p = 1; p <= n_max_ - 1; ++p) out += "," + std::to_string(p);
  out += "\n";
  for (int n = 2; n <= n_max_; ++n) {
    out += std::to_string(n);
    for (int p = 1; p <= n - 1; ++p) {
      const BoundCell& c = cell(n, p);
      if (c.exact) {
        out += ",exact:" + c.exact->to_string();
      } else {
        out += ",≤" + c.upper.to_string() + " (" + (c.provenance.empty() ? "?" : c.provenance.front()) + ")";
      }
    }
    out += "\n";
  }
  return out;
}

std::string BoundTable::to_json() const {
  std::string out = "{\"n_max\": " + std::to_string(n_max_) + ", \"cells\": [";
  bool first = true;
  for (int n = 2; n <= n_max_; ++n) {
    for (int p = 1; p <= n - 1; ++p) {
      const BoundCell& c = cell(n, p);
      if (!first) out += ", ";
      first = false;
      out += "{\"n\": " + std::to_string(n) + ", \"p\": " + std::to_string(p);
      out += ", \"exact\": ";
      out += c.exact ? "\"" + c.exact->to_string() + "\"" : "null";
      out += ", \"upper\": \"" + c.upper.to_string() + "\"";
      out += ", \"upper_float\": " + format_double(c.upper.to_double());
      out += ", \"provenance\": [";
      for (size_t i = 0; i < c.provenance.size(); ++i) {
        if (i) out += ", ";
        out += "\"" + c.provenance[i] + "\"";
      }
      out += "]}";
    }
  }
  out += "]}";
  return out;
}

SearchResult lower_bound_search(int n, int p, const SearchConfig& cfg,
                                const std::optional<Covector>& init) {
  if (p < 1 || p > n - 1) raise(Errc::invalid_argument, "search requires 1 <= p <= n-1");
  if (cfg.budget < 1) raise(Errc::invalid_argument, "search budget must be positive");
  std::mt19937_64 rng(derive_seed(cfg.seed, 0x5ea2c6u));
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto idxs = all_multi_indices(n, p);

  auto normalized = [](Covector c) {
    const double nn = euclidean_norm(c);
    return nn == 0.0 ? c : (1.0 / nn) * c;
  };

  Covector x = [&] {
    if (init) {
      if (init->n() != n || init->p() != p)
        raise(Errc::dimension_mismatch, "search seed covector has the wrong bidegree");
      if (init->is_zero()) raise(Errc::invalid_argument, "search seed covector is zero");
      return normalized(*init);
    }
    Covector d(n, p);
    for (const auto& I : idxs) d.set_coefficient(I, gauss(rng));
    return normalized(d);
  }();

  // Inner evaluations share one optimizer seed, so proposal comparisons see
  // systematic (per-form) noise only.
  auto score = [&](const Covector& c) -> double {
    try {
      return ratio_estimate(c, cfg.inner);
    } catch (const Error&) {
      return 0.0;  // degenerate proposal; rejected by the acceptance test
    }
  };

  double best = score(x);
  Covector xbest = x;
  double delta = cfg.delta0;
  int evals = 0;
  std::vector<size_t> order(idxs.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  while (evals < cfg.budget) {
    // Shuffle the coordinate visiting order each sweep.
    for (size_t i = order.size(); i > 1; --i) {
      std::uniform_int_distribution<size_t> pick(0, i - 1);
      std::swap(order[i - 1], order[pick(rng)]);
    }
    for (size_t oi = 0; oi < order.size() && evals < cfg.budget; ++oi) {
      const MultiIndex& I = idxs[order[oi]];
      Covector cand = xbest;
      cand.set_coefficient(I, cand.coefficient(I) + delta * gauss(rng));
      cand = normalized(cand);
      if (cand.is_zero()) continue;
      const double r = score(cand);
      ++evals;
      if (r > best) {
        best = r;
        xbest = std::move(cand);
      }
    }
    delta *= cfg.decay;
  }
  const double final_ratio = [&] {
    try {
      return ratio_estimate(xbest, cfg.final_eval);
    } catch (const Error&) {
      return best;
    }
  }();
  return {final_ratio, std::move(xbest)};
}

}  // namespace comasslab
