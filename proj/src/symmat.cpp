#include "bws/symmat.hpp"

namespace bws {

EigenDecomp eigen_decompose(const SymMat& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(s.mat());
  if (es.info() != Eigen::Success) {
    throw Error("eigen_decompose: solver failed to converge");
  }
  return EigenDecomp{es.eigenvalues(), es.eigenvectors()};
}

LyapOp::LyapOp(const SpdMat& s) {
  const EigenDecomp ed = eigen_decompose(s.sym());
  lambda_ = ed.eigenvalues;
  q_ = ed.eigenvectors;
}

Matrix LyapOp::solve(const Matrix& v) const {
  require_same_dim(dim(), v.rows(), "LyapOp::solve");
  Matrix w = q_.transpose() * v * q_;
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      w(i, j) /= lambda_(i) + lambda_(j);
    }
  }
  return symmetrize(q_ * w * q_.transpose());
}

namespace {

// Apply f to the spectrum of an SPD matrix.
template <typename F>
Matrix spectral_map(const SpdMat& s, F f) {
  const EigenDecomp ed = eigen_decompose(s.sym());
  Vector d = ed.eigenvalues;
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = f(d(i));
  return symmetrize(ed.eigenvectors * d.asDiagonal() *
                    ed.eigenvectors.transpose());
}

}  // namespace

SpdMat spd_sqrt(const SpdMat& s) {
  return SpdMat(spectral_map(s, [](double x) { return std::sqrt(x); }));
}

SpdMat spd_inv_sqrt(const SpdMat& s) {
  return SpdMat(spectral_map(s, [](double x) { return 1.0 / std::sqrt(x); }));
}

Matrix sqrt_product(const SpdMat& a, const SpdMat& b) {
  require_same_dim(a.dim(), b.dim(), "sqrt_product");
  const Matrix ra = spd_sqrt(a).mat();
  const Matrix ra_inv = spd_inv_sqrt(a).mat();
  const SpdMat inner(ra * b.mat() * ra);
  return ra * spd_sqrt(inner).mat() * ra_inv;
}

SymMat lyapunov_solve(const SpdMat& s, const SymMat& v) {
  require_same_dim(s.dim(), v.dim(), "lyapunov_solve");
  return LyapOp(s).solve(v);
}

SpdMat riccati_solve(const SpdMat& a, const SpdMat& b) {
  require_same_dim(a.dim(), b.dim(), "riccati_solve");
  const Matrix ra = spd_sqrt(a).mat();
  const Matrix ra_inv = spd_inv_sqrt(a).mat();
  const SpdMat inner(ra * b.mat() * ra);
  return SpdMat(ra_inv * spd_sqrt(inner).mat() * ra_inv);
}

SymMat dsqrt(const SpdMat& s, const SymMat& v) {
  require_same_dim(s.dim(), v.dim(), "dsqrt");
  return lyapunov_solve(spd_sqrt(s), v);
}

SymMat dlyapunov(const SpdMat& a, const SymMat& v, const SymMat& u) {
  require_same_dim(a.dim(), v.dim(), "dlyapunov");
  require_same_dim(a.dim(), u.dim(), "dlyapunov");
  const LyapOp lyap(a);
  const Matrix lv = lyap.solve(v.mat());
  return SymMat(-lyap.solve(lv * u.mat() + u.mat() * lv));
}

SymMat d2sqrt(const SpdMat& s, const SymMat& u, const SymMat& v) {
  require_same_dim(s.dim(), u.dim(), "d2sqrt");
  require_same_dim(s.dim(), v.dim(), "d2sqrt");
  const LyapOp lyap(spd_sqrt(s));
  const Matrix lu = lyap.solve(u.mat());
  const Matrix lv = lyap.solve(v.mat());
  return SymMat(-lyap.solve(lv * lu + lu * lv));
}

}  // namespace bws
