#pragma once

#include <Eigen/Dense>
#include <utility>

#include "bws/errors.hpp"

namespace bws {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Acceptance threshold for the smallest eigenvalue of an SPD candidate:
// lambda_min must exceed max(kSpdAbsFloor, kSpdRelFloor * lambda_max).
inline constexpr double kSpdAbsFloor = 1e-12;
inline constexpr double kSpdRelFloor = 1e-12;

inline Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

// Real symmetric matrix. Construction symmetrizes, so entries[i][j] ==
// entries[j][i] holds exactly afterwards.
class SymMat {
 public:
  explicit SymMat(Matrix m) : m_(symmetrize(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1) {
      throw DimMismatch("SymMat: square matrix of dim >= 1 required");
    }
  }

  static SymMat Zero(Eigen::Index n) { return SymMat(Matrix::Zero(n, n)); }
  static SymMat Identity(Eigen::Index n) {
    return SymMat(Matrix::Identity(n, n));
  }

  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& mat() const { return m_; }

  SymMat operator+(const SymMat& o) const { return SymMat(m_ + o.m_); }
  SymMat operator-(const SymMat& o) const { return SymMat(m_ - o.m_); }
  SymMat operator*(double s) const { return SymMat(s * m_); }
  SymMat operator-() const { return SymMat(-m_); }

  double norm() const { return m_.norm(); }

 private:
  Matrix m_;
};

inline SymMat operator*(double s, const SymMat& m) { return m * s; }

// Symmetric positive-definite matrix; validated at construction.
class SpdMat {
 public:
  explicit SpdMat(Matrix m) : s_(SymMat(std::move(m))) { validate(); }
  explicit SpdMat(SymMat s) : s_(std::move(s)) { validate(); }

  static SpdMat Identity(Eigen::Index n) {
    return SpdMat(Matrix::Identity(n, n));
  }

  Eigen::Index dim() const { return s_.dim(); }
  const Matrix& mat() const { return s_.mat(); }
  const SymMat& sym() const { return s_; }

 private:
  void validate() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(s_.mat(),
                                             Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (!(lo > std::max(kSpdAbsFloor, kSpdRelFloor * hi))) {
      throw NotSpd("SpdMat: smallest eigenvalue " + std::to_string(lo) +
                   " below SPD tolerance");
    }
  }

  SymMat s_;
};

// Non-degenerate Gaussian N(mean, cov).
struct GaussParam {
  Vector mean;
  SpdMat cov;

  GaussParam(Vector mu, SpdMat sigma) : mean(std::move(mu)), cov(std::move(sigma)) {
    if (mean.size() != cov.dim()) {
      throw DimMismatch("GaussParam: mean dimension must match cov");
    }
  }
};

// Tangent vector V attached to the base point Sigma.
struct TangentAt {
  SpdMat base;
  SymMat vec;

  TangentAt(SpdMat b, SymMat v) : base(std::move(b)), vec(std::move(v)) {
    if (base.dim() != vec.dim()) {
      throw DimMismatch("TangentAt: base and vector dims differ");
    }
  }
};

inline void require_same_dim(Eigen::Index a, Eigen::Index b,
                             const char* what) {
  if (a != b) throw DimMismatch(std::string(what) + ": dimension mismatch");
}

}  // namespace bws
