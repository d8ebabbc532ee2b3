#include "systolic.hpp"

#include "errors.hpp"

namespace comasslab {

namespace {

std::string provenance_tag(const BoundCell& c) {
  std::string tag = "C2(" + std::to_string(c.n) + "," + std::to_string(c.p) + "):";
  for (size_t i = 0; i < c.provenance.size(); ++i) {
    if (i) tag += "+";
    tag += c.provenance[i];
  }
  return tag;
}

Rational pow_rational(const Rational& r, int e) {
  Rational acc(1);
  for (int i = 0; i < e; ++i) acc = acc * r;
  return acc;
}

}  // namespace

GammaBound gamma_bound(int b) {
  if (b < 1) raise(Errc::invalid_argument, "Betti number must be >= 1");
  GammaBound g;
  g.b = b;
  if (b == 1) {
    g.value = Rational(1);
    g.source = "EXACT_B1";
  } else {
    g.value = Rational(3, 2) * Rational(b);
    g.source = "HERMITE_LINEAR";
  }
  return g;
}

SystolicResult systolic_constant(const SystolicQuery& q, const BoundTable& table) {
  SystolicResult res;
  const GammaBound gamma = gamma_bound(q.b);
  res.source_tags.push_back("GAMMA(b=" + std::to_string(q.b) + "):" + gamma.source);
  if (q.mode == SystolicMode::Complementary) {
    if (q.p < 1 || q.p > q.n - 1)
      raise(Errc::invalid_argument, "complementary mode requires 1 <= p <= n-1");
    const BoundCell& c = table.cell(q.n, q.p);
    res.c_part = c.upper;
    res.c_exact = c.exact.has_value();
    res.source_tags.insert(res.source_tags.begin(), provenance_tag(c));
    res.gamma_part = gamma.value * gamma.value;
  } else {
    if (q.m < 2) raise(Errc::invalid_argument, "m-fold mode requires m >= 2");
    if (q.p < 1 || q.n != q.m * q.p)
      raise(Errc::invalid_argument, "m-fold mode requires n == m*p with p >= 1");
    res.c_part = Rational(1);
    res.c_exact = true;
    std::vector<std::string> tags;
    for (int j = 2; j <= q.m; ++j) {
      const BoundCell& c = table.cell(j * q.p, q.p);
      res.c_part = res.c_part * c.upper;
      res.c_exact = res.c_exact && c.exact.has_value();
      tags.push_back(provenance_tag(c));
    }
    res.source_tags.insert(res.source_tags.begin(), tags.begin(), tags.end());
    res.gamma_part = pow_rational(gamma.value, q.m);
  }
  res.constant = res.c_part * res.gamma_part;
  return res;
}

double cpm_equality_check(int m) {
  if (m < 2) raise(Errc::invalid_argument, "equality check requires m >= 2");
  // factorial(m) / factorial(m-1) / m, exactly. The symbolic stsys powers
  // cancel, so only the factorial ratio remains.
  Rational fact_m(1), fact_m1(1);
  for (int i = 2; i <= m; ++i) fact_m = fact_m * Rational(i);
  for (int i = 2; i <= m - 1; ++i) fact_m1 = fact_m1 * Rational(i);
  const Rational ratio = fact_m / fact_m1 / Rational(m);
  return ratio.to_double();
}

}  // namespace comasslab
