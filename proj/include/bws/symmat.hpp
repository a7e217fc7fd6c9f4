#pragma once

#include "bws/types.hpp"

namespace bws {

// Eigendecomposition of a symmetric matrix: Q diag(lambda) Q^T with
// eigenvalues ascending and Q orthogonal.
struct EigenDecomp {
  Vector eigenvalues;
  Matrix eigenvectors;
};

EigenDecomp eigen_decompose(const SymMat& s);

// Solution operator of the Lyapunov equation X S + S X = V for a fixed SPD
// S. Holds one eigendecomposition of S; solve() is then O(n^3) per call with
// no further factorization.
class LyapOp {
 public:
  explicit LyapOp(const SpdMat& s);

  // L_S[V]: unique symmetric X with X S + S X = V.
  Matrix solve(const Matrix& v) const;
  SymMat solve(const SymMat& v) const { return SymMat(solve(v.mat())); }

  Eigen::Index dim() const { return q_.rows(); }
  const Vector& eigenvalues() const { return lambda_; }

 private:
  Vector lambda_;
  Matrix q_;
};

// Principal square root of an SPD matrix.
SpdMat spd_sqrt(const SpdMat& s);

// Inverse of the principal square root.
SpdMat spd_inv_sqrt(const SpdMat& s);

// (A B)^{1/2} = A^{1/2} (A^{1/2} B A^{1/2})^{1/2} A^{-1/2}. The eigenvalues
// of A B are non-negative by similarity, so the root is well defined, but
// the result is generally not symmetric.
Matrix sqrt_product(const SpdMat& a, const SpdMat& b);

// L_S[V].
SymMat lyapunov_solve(const SpdMat& s, const SymMat& v);

// Unique SPD T with T A T = B.
SpdMat riccati_solve(const SpdMat& a, const SpdMat& b);

// Derivative of the square-root map: d_V sqrt(S) = L_{S^{1/2}}[V].
SymMat dsqrt(const SpdMat& s, const SymMat& v);

// Derivative of A |-> L_A[V] in direction U:
//   -L_A[ L_A[V] U + U L_A[V] ].
SymMat dlyapunov(const SpdMat& a, const SymMat& v, const SymMat& u);

// Second derivative of the square-root map,
//   -L_{S^{1/2}}[ L_{S^{1/2}}[V] L_{S^{1/2}}[U] + L_{S^{1/2}}[U] L_{S^{1/2}}[V] ],
// symmetric in (U, V).
SymMat d2sqrt(const SpdMat& s, const SymMat& u, const SymMat& v);

}  // namespace bws
