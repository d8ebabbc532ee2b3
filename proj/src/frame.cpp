#include "frame.hpp"

#include <cmath>

#include "errors.hpp"

namespace comasslab {

namespace {

constexpr double kGramTolerance = 1e-10;

Eigen::MatrixXd mgs_pass(Eigen::MatrixXd m) {
  for (int j = 0; j < m.cols(); ++j) {
    const double before = m.col(j).norm();
    for (int k = 0; k < j; ++k) m.col(j) -= m.col(k).dot(m.col(j)) * m.col(k);
    const double after = m.col(j).norm();
    if (after <= before * 1e-10)
      raise(Errc::invalid_argument, "matrix is rank-deficient; cannot orthonormalize");
    m.col(j) /= after;
  }
  return m;
}

// Column-major p x p determinant by partial-pivot elimination; destroys a.
double det_inplace(double* a, int p) {
  double det = 1.0;
  for (int k = 0; k < p; ++k) {
    int piv = k;
    double best = std::abs(a[k * p + k]);
    for (int r = k + 1; r < p; ++r) {
      const double v = std::abs(a[k * p + r]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != k) {
      for (int c = k; c < p; ++c) std::swap(a[c * p + k], a[c * p + piv]);
      det = -det;
    }
    const double akk = a[k * p + k];
    det *= akk;
    for (int r = k + 1; r < p; ++r) {
      const double f = a[k * p + r] / akk;
      if (f == 0.0) continue;
      for (int c = k + 1; c < p; ++c) a[c * p + r] -= f * a[c * p + k];
    }
  }
  return det;
}

constexpr int kMaxDegree = 16;

}  // namespace

Frame::Frame(Eigen::MatrixXd columns) : columns_(std::move(columns)) {
  const int n = static_cast<int>(columns_.rows());
  const int p = static_cast<int>(columns_.cols());
  if (p < 1 || p > n)
    raise(Errc::invalid_argument,
          "frame shape " + std::to_string(n) + "x" + std::to_string(p) + " requires 1 <= p <= n");
  Eigen::MatrixXd gram = columns_.transpose() * columns_;
  gram.diagonal().array() -= 1.0;
  if (gram.cwiseAbs().maxCoeff() > kGramTolerance)
    raise(Errc::invalid_argument, "frame columns are not orthonormal within 1e-10");
}

Frame Frame::orthonormalized(const Eigen::MatrixXd& m) {
  if (m.cols() < 1 || m.cols() > m.rows())
    raise(Errc::invalid_argument, "orthonormalization requires an n x p matrix with 1 <= p <= n");
  Eigen::MatrixXd q = mgs_pass(m);
  Eigen::MatrixXd gram = q.transpose() * q;
  gram.diagonal().array() -= 1.0;
  if (gram.cwiseAbs().maxCoeff() > kGramTolerance) q = mgs_pass(q);
  return Frame(std::move(q));
}

Frame random_frame(int n, int p, std::mt19937_64& rng) {
  if (p < 1 || p > n) raise(Errc::invalid_argument, "random frame requires 1 <= p <= n");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd m(n, p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = gauss(rng);
  return Frame::orthonormalized(m);
}

double evaluate_raw(const Covector& a, const Eigen::MatrixXd& m) {
  if (m.rows() != a.n() || m.cols() != a.p())
    raise(Errc::dimension_mismatch, "evaluation matrix shape does not match covector bidegree");
  const int p = a.p();
  if (p == 0) {
    // Degree 0: the empty product is 1, so evaluation returns the scalar term.
    return a.coefficient(MultiIndex());
  }
  double buf[kMaxDegree * kMaxDegree];
  double acc = 0.0;
  for (const auto& [I, coeff] : a.terms()) {
    const auto& rows = I.entries();
    for (int c = 0; c < p; ++c)
      for (int r = 0; r < p; ++r) buf[c * p + r] = m(rows[r] - 1, c);
    acc += coeff * det_inplace(buf, p);
  }
  return acc;
}

double evaluate_on_frame(const Covector& a, const Frame& f) {
  return evaluate_raw(a, f.columns());
}

Eigen::MatrixXd gradient_raw(const Covector& a, const Eigen::MatrixXd& m) {
  if (m.rows() != a.n() || m.cols() != a.p())
    raise(Errc::dimension_mismatch, "gradient matrix shape does not match covector bidegree");
  const int p = a.p();
  Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(m.rows(), m.cols());
  if (p == 0) return grad;
  double minor_buf[kMaxDegree * kMaxDegree];
  for (const auto& [I, coeff] : a.terms()) {
    const auto& rows = I.entries();
    // d det(M_I) / d M(rows[r]-1, c) is the (r, c) cofactor of the p x p
    // submatrix M_I; expand each cofactor as a signed minor determinant.
    for (int r = 0; r < p; ++r) {
      for (int c = 0; c < p; ++c) {
        int mc = 0;
        for (int cc = 0; cc < p; ++cc) {
          if (cc == c) continue;
          int mr = 0;
          for (int rr = 0; rr < p; ++rr) {
            if (rr == r) continue;
            minor_buf[mc * (p - 1) + mr] = m(rows[rr] - 1, cc);
            ++mr;
          }
          ++mc;
        }
        const double cof = ((r + c) % 2 == 0 ? 1.0 : -1.0) * det_inplace(minor_buf, p - 1);
        grad(rows[r] - 1, c) += coeff * cof;
      }
    }
  }
  return grad;
}

}  // namespace comasslab
