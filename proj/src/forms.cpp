#include "forms.hpp"

#include <cmath>

#include "errors.hpp"
#include "rational.hpp"

namespace comasslab {

Covector special_lagrangian_form(const SpecialLagParams& params) {
  const auto& mu = params.mu;
  Covector f(6, 3);
  f.set_coefficient(MultiIndex({1, 2, 3}), 1.0);
  f.set_coefficient(MultiIndex({1, 5, 6}), mu[0]);
  // e_4 ^ e_2 ^ e_6 = -e_246 (one transposition), e_4 ^ e_5 ^ e_3 = +e_345
  // (two transpositions).
  f.set_coefficient(MultiIndex({2, 4, 6}), -mu[1]);
  f.set_coefficient(MultiIndex({3, 4, 5}), mu[2]);
  f.set_coefficient(MultiIndex({4, 5, 6}), mu[3]);
  return f;
}

bool dadok_harvey_check(const SpecialLagParams& params) {
  const auto& mu = params.mu;
  const double s =
      mu[0] * mu[0] + mu[1] * mu[1] + mu[2] * mu[2] + mu[3] * mu[3] + 2.0 * mu[0] * mu[1] * mu[2];
  return s <= 1.0;
}

bool special_lagrangian_canonical(const SpecialLagParams& params) {
  const auto& mu = params.mu;
  return 1.0 >= mu[0] && mu[0] >= mu[1] && mu[1] >= std::abs(mu[2]) &&
         mu[0] * mu[0] + mu[3] * mu[3] <= 1.0;
}

Covector symplectic_power_form(int k, int n) {
  if (k < 1) raise(Errc::invalid_argument, "symplectic power requires k >= 1");
  if (2 * k > n)
    raise(Errc::invalid_argument,
          "symplectic power needs 2k <= n, got k=" + std::to_string(k) +
              ", n=" + std::to_string(n));
  Covector f(n, 2);
  for (int i = 1; i <= k; ++i) f.set_coefficient(MultiIndex({2 * i - 1, 2 * i}), 1.0);
  return f;
}

Covector cayley_form() {
  static const int kTerms[14][4] = {
      {1, 2, 3, 4}, {1, 2, 5, 6}, {1, 2, 7, 8}, {1, 3, 5, 7}, {1, 3, 6, 8},
      {1, 4, 5, 8}, {1, 4, 6, 7}, {2, 3, 5, 8}, {2, 3, 6, 7}, {2, 4, 5, 7},
      {2, 4, 6, 8}, {3, 4, 5, 6}, {3, 4, 7, 8}, {5, 6, 7, 8}};
  static const double kSigns[14] = {+1, +1, +1, +1, -1, -1, -1, -1, -1, -1, +1, +1, +1, +1};
  Covector f(8, 4);
  for (int t = 0; t < 14; ++t)
    f.set_coefficient(MultiIndex({kTerms[t][0], kTerms[t][1], kTerms[t][2], kTerms[t][3]}),
                      kSigns[t]);
  return f;
}

std::vector<MultiIndex> all_multi_indices(int n, int p) {
  if (p < 0 || p > n) raise(Errc::invalid_argument, "multi-index degree outside 0..n");
  std::vector<MultiIndex> out;
  if (p == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<int> c(p);
  for (int i = 0; i < p; ++i) c[i] = i + 1;
  while (true) {
    out.emplace_back(c);
    // Advance to the next combination in lexicographic order.
    int i = p - 1;
    while (i >= 0 && c[i] == n - (p - 1 - i)) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < p; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

Covector random_covector(int n, int p, int terms, std::mt19937_64& rng) {
  if (p < 0 || p > n) raise(Errc::invalid_argument, "degree outside 0..n");
  auto idxs = all_multi_indices(n, p);
  const int total = static_cast<int>(idxs.size());
  if (terms < 1 || terms > total)
    raise(Errc::invalid_argument,
          "term count must be in 1.." + std::to_string(total) + ", got " + std::to_string(terms));
  // Partial Fisher-Yates: the first `terms` slots become a uniform sample.
  for (int i = 0; i < terms; ++i) {
    std::uniform_int_distribution<int> pick(i, total - 1);
    std::swap(idxs[i], idxs[pick(rng)]);
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  Covector f(n, p);
  for (int i = 0; i < terms; ++i) f.set_coefficient(idxs[i], gauss(rng));
  return f;
}

}  // namespace comasslab
