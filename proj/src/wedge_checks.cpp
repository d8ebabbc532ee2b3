#include "wedge_checks.hpp"

#include <functional>

#include "errors.hpp"

namespace comasslab {

namespace {

std::string describe(const Covector& c) {
  return "(n=" + std::to_string(c.n()) + ",p=" + std::to_string(c.p()) +
         ",terms=" + std::to_string(c.terms().size()) + ")";
}

OptimizerConfig with_seed(OptimizerConfig cfg, std::uint64_t stream) {
  cfg.seed = derive_seed(cfg.seed, stream);
  return cfg;
}

OptimizerConfig scaled(OptimizerConfig cfg, int factor) {
  cfg.restarts *= factor;
  return cfg;
}

// Shared verdict logic: evaluate both sides, and on an apparent violation
// re-evaluate with boosted restarts before declaring failure. The sides are
// recomputed as functions of the optimizer config so the retry pass re-runs
// every estimate involved.
WedgeBoundReport finish(const std::function<std::pair<double, double>(const OptimizerConfig&)>& sides,
                        double constant, std::string inputs, const CheckConfig& cfg) {
  WedgeBoundReport rep;
  rep.constant_used = constant;
  rep.inputs = std::move(inputs);
  auto [lhs, rhs] = sides(cfg.optimizer);
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.margin = rhs - lhs;
  if (rep.margin >= -cfg.tol) {
    rep.status = CheckStatus::PASS;
    return rep;
  }
  auto [lhs2, rhs2] = sides(scaled(cfg.optimizer, cfg.retry_factor));
  rep.lhs = lhs2;
  rep.rhs = rhs2;
  rep.margin = rhs2 - lhs2;
  rep.status = rep.margin >= -cfg.tol ? CheckStatus::RETRY : CheckStatus::FAIL;
  return rep;
}

}  // namespace

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::PASS:
      return "PASS";
    case CheckStatus::RETRY:
      return "RETRY";
    case CheckStatus::FAIL:
      return "FAIL";
  }
  return "FAIL";
}

WedgeBoundReport check_complementary(const Covector& a, const Covector& b,
                                     const BoundTable& table, const CheckConfig& cfg) {
  if (a.n() != b.n()) raise(Errc::dimension_mismatch, "factors live in different dimensions");
  const int n = a.n();
  if (a.p() + b.p() != n)
    raise(Errc::dimension_mismatch, "complementary check needs a.p + b.p == n");
  if (a.p() < 1 || b.p() < 1)
    raise(Errc::invalid_argument, "factors must have degree >= 1");
  const double constant = table.upper(n, a.p()).to_double();
  const double lhs = euclidean_norm(wedge(a, b));  // top degree: exact
  auto sides = [&](const OptimizerConfig& opt) {
    const double ca = comass_estimate(a, with_seed(opt, 1)).lower_bound;
    const double cb = comass_estimate(b, with_seed(opt, 2)).lower_bound;
    return std::make_pair(lhs, constant * ca * cb);
  };
  return finish(sides, constant, describe(a) + " ^ " + describe(b), cfg);
}

WedgeBoundReport check_general(const Covector& a, const Covector& b, const BoundTable& table,
                               const CheckConfig& cfg) {
  if (a.n() != b.n()) raise(Errc::dimension_mismatch, "factors live in different dimensions");
  const int n = a.n();
  const int d = a.p() + b.p();
  if (d > n) raise(Errc::degree_overflow, "product degree exceeds the ambient dimension");
  if (a.p() < 1 || b.p() < 1)
    raise(Errc::invalid_argument, "factors must have degree >= 1");
  const double constant = table.upper(d, a.p()).to_double();
  const Covector w = wedge(a, b);
  auto sides = [&](const OptimizerConfig& opt) {
    const double ca = comass_estimate(a, with_seed(opt, 1)).lower_bound;
    const double cb = comass_estimate(b, with_seed(opt, 2)).lower_bound;
    double lhs;
    if (w.is_zero()) {
      lhs = 0.0;
    } else if (d == n) {
      lhs = comass_exact(w);  // volume degree: exact
    } else {
      lhs = comass_estimate(w, with_seed(opt, 3)).lower_bound;
    }
    return std::make_pair(lhs, constant * ca * cb);
  };
  return finish(sides, constant, describe(a) + " ^ " + describe(b), cfg);
}

Rational m_fold_constant(const BoundTable& table, int m, int p) {
  if (m < 2) raise(Errc::invalid_argument, "m-fold constant requires m >= 2");
  Rational c(1);
  for (int j = 2; j <= m; ++j) c = c * table.upper(j * p, p);
  return c;
}

WedgeBoundReport check_m_fold(const std::vector<Covector>& forms, const BoundTable& table,
                              const CheckConfig& cfg) {
  const int m = static_cast<int>(forms.size());
  if (m < 2) raise(Errc::invalid_argument, "m-fold check requires at least two factors");
  const int p = forms[0].p();
  const int n = forms[0].n();
  if (p < 1) raise(Errc::invalid_argument, "factors must have degree >= 1");
  if (n != m * p)
    raise(Errc::dimension_mismatch, "m-fold check needs ambient dimension m*p");
  std::string inputs;
  for (const auto& f : forms) {
    if (f.n() != n || f.p() != p)
      raise(Errc::dimension_mismatch, "all factors must share (n, p)");
    if (!inputs.empty()) inputs += " ^ ";
    inputs += describe(f);
  }
  const double constant = m_fold_constant(table, m, p).to_double();
  Covector w = forms[0];
  for (int j = 1; j < m; ++j) w = wedge(w, forms[j]);
  const double lhs = euclidean_norm(w);  // top degree: exact
  auto sides = [&](const OptimizerConfig& opt) {
    double prod = constant;
    for (int j = 0; j < m; ++j)
      prod *= comass_estimate(forms[j], with_seed(opt, 10 + j)).lower_bound;
    return std::make_pair(lhs, prod);
  };
  return finish(sides, constant, std::move(inputs), cfg);
}

}  // namespace comasslab
