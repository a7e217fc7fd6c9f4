#include "bws/geodesics.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace bws {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Maximal open interval of theta with 1 + theta * m_i > 0 for every m_i.
Interval interval_from_shifts(const Vector& shifts) {
  double lo = -kInf;
  double hi = kInf;
  for (Eigen::Index i = 0; i < shifts.size(); ++i) {
    const double m = shifts(i);
    if (m > 0.0) {
      lo = std::max(lo, -1.0 / m);
    } else if (m < 0.0) {
      hi = std::min(hi, -1.0 / m);
    }
  }
  return Interval{lo, hi};
}

void check_spd_shift(const SymMat& l, const char* what) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(
      Matrix(Matrix::Identity(l.dim(), l.dim()) + l.mat()),
      Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > std::max(kSpdAbsFloor, kSpdRelFloor * std::abs(hi)))) {
    throw OutOfDomain(std::string(what) + ": I + L has eigenvalue " +
                      std::to_string(lo) + ", outside the SPD cone");
  }
}

void require_invertible(const Matrix& a, const char* what) {
  if (a.rows() != a.cols()) throw DimMismatch(std::string(what) + ": square matrix required");
  Eigen::JacobiSVD<Matrix> svd(a);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (!(smin > std::max(kSpdAbsFloor, kSpdRelFloor * smax))) {
    throw Singular(std::string(what) + ": matrix numerically singular");
  }
}

}  // namespace

GeodesicSpec geodesic(const SpdMat& sigma0, const SpdMat& sigma1) {
  require_same_dim(sigma0.dim(), sigma1.dim(), "geodesic");
  SpdMat t = riccati_solve(sigma0, sigma1);
  // (1-theta) + theta*lambda = 1 + theta*(lambda - 1) for eigenvalues of T.
  Vector shifts = eigen_decompose(t.sym()).eigenvalues.array() - 1.0;
  Interval domain = interval_from_shifts(shifts);
  return GeodesicSpec{sigma0, sigma1, std::move(t), domain};
}

SpdMat geodesic_point(const GeodesicSpec& spec, double t) {
  if (!spec.domain.contains(t)) {
    throw OutOfDomain("geodesic_point: t = " + std::to_string(t) +
                      " outside (" + std::to_string(spec.domain.lo) + ", " +
                      std::to_string(spec.domain.hi) + ")");
  }
  const Eigen::Index n = spec.start.dim();
  const Matrix m =
      (1.0 - t) * Matrix::Identity(n, n) + t * spec.map_T.mat();
  return SpdMat(m * spec.start.mat() * m);
}

SymMat geodesic_velocity(const GeodesicSpec& spec, double t) {
  const Eigen::Index n = spec.start.dim();
  const Matrix d = spec.map_T.mat() - Matrix::Identity(n, n);
  const Matrix m =
      (1.0 - t) * Matrix::Identity(n, n) + t * spec.map_T.mat();
  return SymMat(d * spec.start.mat() * m + m * spec.start.mat() * d);
}

SpdMat exp_map(const SpdMat& c, const SymMat& v) {
  require_same_dim(c.dim(), v.dim(), "exp_map");
  const SymMat l = lyapunov_solve(c, v);
  check_spd_shift(l, "exp_map");
  const Matrix f = l.mat() + Matrix::Identity(c.dim(), c.dim());
  return SpdMat(f * c.mat() * f);
}

SymMat log_map(const SpdMat& c, const SpdMat& b) {
  require_same_dim(c.dim(), b.dim(), "log_map");
  const Matrix bc_root = sqrt_product(b, c);
  // (C B)^{1/2} is the transpose of (B C)^{1/2}.
  return SymMat(bc_root + bc_root.transpose() - 2.0 * c.mat());
}

Interval domain_interval(const SpdMat& c, const SymMat& v) {
  require_same_dim(c.dim(), v.dim(), "domain_interval");
  const SymMat l = lyapunov_solve(c, v);
  return interval_from_shifts(eigen_decompose(l).eigenvalues);
}

SymMat exp_differential(const SpdMat& c, const SymMat& v, const SymMat& x) {
  require_same_dim(c.dim(), v.dim(), "exp_differential");
  require_same_dim(c.dim(), x.dim(), "exp_differential");
  const LyapOp lyap(c);
  const Matrix lv = lyap.solve(v.mat());
  check_spd_shift(SymMat(lv), "exp_differential");
  const Matrix lx = lyap.solve(x.mat());
  return SymMat(x.mat() + lx * c.mat() * lv + lv * c.mat() * lx);
}

Matrix horizontal_projection(const Matrix& a, const Matrix& x) {
  require_invertible(a, "horizontal_projection");
  require_same_dim(a.rows(), x.rows(), "horizontal_projection");
  require_same_dim(a.cols(), x.cols(), "horizontal_projection");
  const SpdMat aat(a * a.transpose());
  const Matrix rhs = x * a.transpose() + a * x.transpose();
  return LyapOp(aat).solve(rhs) * a;
}

Matrix horizontal_lift(const SpdMat& s, const SymMat& v, const Matrix& a) {
  require_same_dim(s.dim(), v.dim(), "horizontal_lift");
  require_same_dim(s.dim(), a.rows(), "horizontal_lift");
  const Matrix aat = a * a.transpose();
  if ((aat - s.mat()).norm() > 1e-9 * std::max(1.0, s.mat().norm())) {
    throw LiftMismatch("horizontal_lift: A A^T does not reproduce S");
  }
  return LyapOp(s).solve(v.mat()) * a;
}

HorizontalLine is_horizontal_line(const Matrix& a0, const Matrix& a1) {
  require_invertible(a0, "is_horizontal_line");
  require_invertible(a1, "is_horizontal_line");
  const Matrix t = a1 * a0.inverse();
  const double asym = (t - t.transpose()).norm();
  if (asym > 1e-10 * std::max(1.0, t.norm())) {
    return HorizontalLine{false, std::nullopt};
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(t),
                                           Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > std::max(kSpdAbsFloor, kSpdRelFloor * std::abs(hi)))) {
    return HorizontalLine{false, std::nullopt};
  }
  return HorizontalLine{true, SpdMat(symmetrize(t))};
}

bool geodesic_surface_commute_check(const SpdMat& sigma0,
                                    const std::vector<SpdMat>& others,
                                    double commute_tolerance) {
  std::vector<Matrix> maps;
  maps.reserve(others.size());
  for (const SpdMat& s : others) {
    require_same_dim(sigma0.dim(), s.dim(), "geodesic_surface_commute_check");
    maps.push_back(riccati_solve(sigma0, s).mat());
  }
  for (size_t i = 0; i < maps.size(); ++i) {
    for (size_t j = i + 1; j < maps.size(); ++j) {
      const double comm = (maps[i] * maps[j] - maps[j] * maps[i]).norm();
      if (comm > commute_tolerance * maps[i].norm() * maps[j].norm()) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace bws
