#pragma once

#include <Eigen/Dense>
#include <random>

#include "covector.hpp"

namespace comasslab {

// An orthonormal p-frame in R^n: an n x p matrix with orthonormal columns
// representing the simple unit p-vector v_1 ^ ... ^ v_p. Construction
// validates the Gram matrix to 1e-10; use orthonormalized() to project an
// arbitrary full-rank matrix onto the frame manifold first.
class Frame {
 public:
  // Validates shape (1 <= p <= n) and orthonormality (max |Gram - I| <= 1e-10).
  explicit Frame(Eigen::MatrixXd columns);

  int n() const { return static_cast<int>(columns_.rows()); }
  int p() const { return static_cast<int>(columns_.cols()); }
  const Eigen::MatrixXd& columns() const { return columns_; }

  // QR-style retraction: modified Gram-Schmidt, re-orthogonalized once more
  // if the first pass leaves a Gram residual above 1e-10. Raises on
  // rank-deficient input.
  static Frame orthonormalized(const Eigen::MatrixXd& m);

 private:
  Eigen::MatrixXd columns_;
};

// Haar-ish random frame: i.i.d. standard normal matrix pushed through the
// orthonormalizing retraction.
Frame random_frame(int n, int p, std::mt19937_64& rng);

// phi(v_1, ..., v_p) = sum_I a_I det(M_I) over the frame's column span.
double evaluate_on_frame(const Covector& a, const Frame& f);

// Multilinear extension of the evaluation to an arbitrary (not necessarily
// orthonormal) n x p matrix.
double evaluate_raw(const Covector& a, const Eigen::MatrixXd& m);

// Euclidean gradient of evaluate_raw in the matrix entries:
// grad(i,j) = evaluation with column j replaced by the basis vector e_i,
// assembled from cofactor expansions of each term's row submatrix.
Eigen::MatrixXd gradient_raw(const Covector& a, const Eigen::MatrixXd& m);

}  // namespace comasslab
