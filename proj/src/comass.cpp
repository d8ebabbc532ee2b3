#include "comass.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include <Eigen/Eigenvalues>

#include "errors.hpp"

namespace comasslab {

namespace {

// Inner driver for one restart: ascend the multilinear objective over the
// frame manifold from a random starting frame.
struct RestartOutcome {
  double value = 0.0;
  Eigen::MatrixXd frame;
  int iterations = 0;
  bool converged = false;
};

Eigen::MatrixXd tangent_project(const Eigen::MatrixXd& m, const Eigen::MatrixXd& g) {
  Eigen::MatrixXd mtg = m.transpose() * g;
  Eigen::MatrixXd sym = 0.5 * (mtg + mtg.transpose());
  return g - m * sym;
}

RestartOutcome ascend_once(const Covector& unit, int n, int p, std::uint64_t seed,
                           const OptimizerConfig& cfg) {
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd m = random_frame(n, p, rng).columns();
  double f = evaluate_raw(unit, m);
  RestartOutcome out;
  int it = 0;
  for (; it < cfg.max_iter; ++it) {
    Eigen::MatrixXd grad = tangent_project(m, gradient_raw(unit, m));
    const double g2 = grad.squaredNorm();
    if (std::sqrt(g2) < cfg.grad_tol) {
      out.converged = true;
      break;
    }
    // Backtracking line search: start at 1.0, halve until the Armijo
    // sufficient-increase test passes.
    double alpha = 1.0;
    bool accepted = false;
    Eigen::MatrixXd cand;
    double fc = f;
    while (alpha >= cfg.step_tol) {
      cand = Frame::orthonormalized(m + alpha * grad).columns();
      fc = evaluate_raw(unit, cand);
      if (fc >= f + cfg.armijo_c1 * alpha * g2) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      // No acceptable step above the step tolerance: stationary for our purposes.
      out.converged = true;
      break;
    }
    // Refinement: the first Armijo-accepted step can overshoot a curved ridge
    // while still clearing the (weak) sufficient-increase test, stalling the
    // ascent. Keep halving as long as the objective strictly improves and take
    // the best candidate; every candidate still satisfies the Armijo test for
    // its own step length.
    while (alpha * 0.5 >= cfg.step_tol) {
      Eigen::MatrixXd cand2 = Frame::orthonormalized(m + (alpha * 0.5) * grad).columns();
      const double f2 = evaluate_raw(unit, cand2);
      if (f2 > fc) {
        alpha *= 0.5;
        cand.swap(cand2);
        fc = f2;
      } else {
        break;
      }
    }
    m.swap(cand);
    f = fc;
  }
  out.value = evaluate_raw(unit, m);
  out.frame = std::move(m);
  out.iterations = it;
  return out;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  auto splitmix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  return splitmix(splitmix(seed) ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
}

bool comass_exact_supported(int n, int p) {
  return p == 0 || p == n || p == 1 || p == n - 1 || p == 2;
}

std::vector<double> skew_pair_values(const Covector& a) {
  if (a.p() != 2) raise(Errc::unsupported_degree, "pair values are defined for degree 2 only");
  const int n = a.n();
  Eigen::MatrixXd skew = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [I, v] : a.terms()) {
    const int i = I.entries()[0] - 1;
    const int j = I.entries()[1] - 1;
    skew(i, j) = v;
    skew(j, i) = -v;
  }
  // Singular values of a real skew matrix come in equal pairs (plus a zero for
  // odd n); the canonical pair values are the deduplicated list. Deduplicate on
  // the eigenvalues of the symmetric square, not on their square roots: the
  // sqrt map inflates the solver's absolute rounding noise (~eps * lambda_max)
  // to ~sqrt(eps) * sigma_1 near zero, which would spuriously trip the pairing
  // check on rank-deficient inputs.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(skew.transpose() * skew);
  std::vector<double> lam(n);
  for (int i = 0; i < n; ++i) lam[i] = std::max(0.0, es.eigenvalues()[n - 1 - i]);
  const double pair_tol = 1e-8 * std::max(1.0, lam.empty() ? 0.0 : lam[0]);
  std::vector<double> pairs;
  for (int i = 0; i + 1 < n; i += 2) {
    if (std::abs(lam[i] - lam[i + 1]) > pair_tol)
      raise(Errc::internal, "skew spectrum does not split into pairs");
    pairs.push_back(std::sqrt(0.5 * (lam[i] + lam[i + 1])));
  }
  return pairs;
}

double comass_exact(const Covector& a) {
  const int n = a.n();
  const int p = a.p();
  if (p == 0 || p == n) {
    // Single basis coefficient either way (the scalar or the volume form).
    double c = 0.0;
    for (const auto& [I, v] : a.terms()) c = v;
    return std::abs(c);
  }
  if (p == 1 || p == n - 1) return euclidean_norm(a);
  if (p == 2) {
    auto pairs = skew_pair_values(a);
    return pairs.empty() ? 0.0 : pairs.front();
  }
  raise(Errc::unsupported_degree,
        "no closed form for degree " + std::to_string(p) + " in dimension " + std::to_string(n));
}

ComassEstimate comass_estimate(const Covector& a, const OptimizerConfig& cfg) {
  const int n = a.n();
  const int p = a.p();
  // p == n is allowed: there the objective is coeff * det(M), constant in
  // magnitude over orthonormal frames, and every restart converges at once.
  if (p < 1 || p > n)
    raise(Errc::invalid_argument, "estimation requires 1 <= p <= n");
  if (cfg.restarts < 1 || cfg.max_iter < 1)
    raise(Errc::invalid_argument, "optimizer needs at least one restart and one iteration");

  const double scale = euclidean_norm(a);
  if (scale == 0.0) {
    // The zero covector: comass 0, witnessed by any frame.
    std::mt19937_64 rng(derive_seed(cfg.seed, 0));
    return ComassEstimate(random_frame(n, p, rng));
  }
  // Optimize the unit-normalized covector so behavior is scale-invariant;
  // the certified bound below re-evaluates the original input.
  const Covector unit = (1.0 / scale) * a;

  std::vector<RestartOutcome> outcomes(cfg.restarts);
  const int threads = std::max(1, cfg.threads);
  if (threads == 1) {
    for (int r = 0; r < cfg.restarts; ++r)
      outcomes[r] = ascend_once(unit, n, p, derive_seed(cfg.seed, r), cfg);
  } else {
    std::atomic<int> next{0};
    auto worker = [&] {
      for (int r = next.fetch_add(1); r < cfg.restarts; r = next.fetch_add(1))
        outcomes[r] = ascend_once(unit, n, p, derive_seed(cfg.seed, r), cfg);
    };
    std::vector<std::thread> pool;
    const int nthreads = std::min(threads, cfg.restarts);
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  double best = outcomes[0].value;
  for (const auto& o : outcomes) best = std::max(best, o.value);
  // Deterministic witness: the first restart within tie_tol of the best value.
  // Identical under any thread count because outcomes are indexed by restart.
  int pick = 0;
  for (int r = 0; r < cfg.restarts; ++r) {
    if (outcomes[r].value >= best - cfg.tie_tol) {
      pick = r;
      break;
    }
  }

  ComassEstimate est{Frame(outcomes[pick].frame)};
  est.lower_bound = evaluate_on_frame(a, est.witness);
  est.restarts_used = cfg.restarts;
  for (const auto& o : outcomes) {
    est.iterations += o.iterations;
    if (o.converged) ++est.converged_restarts;
  }
  return est;
}

double ratio_estimate(const Covector& a, const OptimizerConfig& cfg) {
  const double norm = euclidean_norm(a);
  if (norm == 0.0)
    raise(Errc::invalid_argument, "ratio is undefined for the zero covector");
  const double lower = comass_estimate(a, cfg).lower_bound;
  if (!(lower > 0.0))
    raise(Errc::invalid_argument,
          "comass estimate is not positive; increase restarts before taking ratios");
  return norm / lower;
}

}  // namespace comasslab
