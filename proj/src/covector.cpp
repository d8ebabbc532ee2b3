#include "covector.hpp"

#include <cmath>

#include "errors.hpp"

namespace comasslab {

namespace {
constexpr int kMaxDimension = 16;  // term count is binomial(n,p); larger n is out of scope
}

Covector::Covector(int n, int p) : n_(n), p_(p) {
  if (n < 0 || n > kMaxDimension)
    raise(Errc::invalid_argument,
          "ambient dimension " + std::to_string(n) + " outside supported range 0.." +
              std::to_string(kMaxDimension));
  if (p < 0 || p > n)
    raise(Errc::invalid_argument,
          "degree " + std::to_string(p) + " outside 0.." + std::to_string(n));
}

void Covector::validate_index(const MultiIndex& I) const {
  if (I.degree() != p_)
    raise(Errc::dimension_mismatch,
          "multi-index " + I.to_string() + " has degree " + std::to_string(I.degree()) +
              ", covector has degree " + std::to_string(p_));
  if (I.max_entry() > n_)
    raise(Errc::invalid_argument,
          "multi-index " + I.to_string() + " exceeds ambient dimension " + std::to_string(n_));
}

double Covector::coefficient(const MultiIndex& I) const {
  auto it = terms_.find(I);
  return it == terms_.end() ? 0.0 : it->second;
}

void Covector::set_coefficient(const MultiIndex& I, double value) {
  validate_index(I);
  if (value == 0.0) {
    terms_.erase(I);
  } else {
    terms_[I] = value;
  }
}

void Covector::add_coefficient(const MultiIndex& I, double value) {
  validate_index(I);
  auto it = terms_.find(I);
  double sum = (it == terms_.end() ? 0.0 : it->second) + value;
  if (sum == 0.0) {
    if (it != terms_.end()) terms_.erase(it);
  } else {
    terms_[I] = sum;
  }
}

Covector Covector::basis(int n, int p, const MultiIndex& I) {
  Covector c(n, p);
  c.set_coefficient(I, 1.0);
  return c;
}

Covector operator+(const Covector& a, const Covector& b) {
  if (a.n_ != b.n_ || a.p_ != b.p_)
    raise(Errc::dimension_mismatch, "covector sum requires matching (n, p)");
  Covector out = a;
  for (const auto& [I, v] : b.terms_) out.add_coefficient(I, v);
  return out;
}

Covector operator-(const Covector& a, const Covector& b) { return a + (-1.0 * b); }

Covector operator*(double s, const Covector& a) {
  Covector out(a.n_, a.p_);
  if (s == 0.0) return out;
  for (const auto& [I, v] : a.terms_) out.set_coefficient(I, s * v);
  return out;
}

bool operator==(const Covector& a, const Covector& b) {
  return a.n_ == b.n_ && a.p_ == b.p_ && a.terms_ == b.terms_;
}

Covector wedge(const Covector& a, const Covector& b) {
  if (a.n() != b.n())
    raise(Errc::dimension_mismatch, "wedge operands live in different ambient dimensions");
  if (a.p() + b.p() > a.n())
    raise(Errc::degree_overflow,
          "wedge degree " + std::to_string(a.p() + b.p()) + " exceeds ambient dimension " +
              std::to_string(a.n()));
  Covector out(a.n(), a.p() + b.p());
  for (const auto& [I, av] : a.terms()) {
    for (const auto& [J, bv] : b.terms()) {
      auto merged = I.merge_sign(J);
      if (!merged) continue;
      out.add_coefficient(merged->first, merged->second * av * bv);
    }
  }
  return out;
}

Covector hodge_star(const Covector& a) {
  Covector out(a.n(), a.n() - a.p());
  for (const auto& [I, v] : a.terms())
    out.add_coefficient(I.complement(a.n()), I.complement_sign(a.n()) * v);
  return out;
}

double euclidean_norm(const Covector& a) {
  double s = 0.0;
  for (const auto& [I, v] : a.terms()) s += v * v;
  return std::sqrt(s);
}

}  // namespace comasslab
