#include "bws/second_order.hpp"

#include <cmath>

#include "bws/metric.hpp"

namespace bws {

SymMat christoffel(const LyapOp& lyap, const SpdMat& s, const SymMat& x,
                   const SymMat& y) {
  require_same_dim(s.dim(), x.dim(), "christoffel");
  require_same_dim(s.dim(), y.dim(), "christoffel");
  const Matrix lx = lyap.solve(x.mat());
  const Matrix ly = lyap.solve(y.mat());
  const Matrix raw = s.mat() * ly * lx + ly * lx * s.mat() -
                     lx * y.mat() - ly * x.mat();
  return SymMat(raw);  // SymMat construction symmetrizes
}

SymMat christoffel(const SpdMat& s, const SymMat& x, const SymMat& y) {
  return christoffel(LyapOp(s), s, x, y);
}

SymMat covariant_derivative(const SpdMat& s, const SymMat& x,
                            const VectorFieldEval& y_eval) {
  return y_eval.directional_derivative + christoffel(s, x, y_eval.value);
}

double covariant_derivative_inner(const SpdMat& s, const SymMat& x,
                                  const VectorFieldEval& y_eval,
                                  const SymMat& z) {
  const LyapOp lyap(s);
  const Matrix lx = lyap.solve(x.mat());
  const Matrix ly = lyap.solve(y_eval.value.mat());
  const Matrix lz = lyap.solve(z.mat());
  const double flat = wasserstein_inner(lyap, y_eval.directional_derivative, z);
  return flat + 0.5 * (lx * z.mat() * ly).trace() -
         0.5 * (lx * y_eval.value.mat() * lz).trace() -
         0.5 * (ly * x.mat() * lz).trace();
}

namespace {

struct PathPoint {
  SpdMat state;
  SymMat velocity;
};

template <typename Path>
TransportResult transport_along(const Path& path, const SymMat& v,
                                int n_steps) {
  if (n_steps < 1) throw Error("parallel_transport: n_steps must be >= 1");
  const double h = 1.0 / n_steps;

  Matrix u = v.mat();
  double drift = 0.0;
  const double norm0 = [&] {
    const PathPoint p = path(0.0);
    return wasserstein_inner(p.state, v, v);
  }();

  auto rhs = [&](const PathPoint& p, const Matrix& uu) -> Matrix {
    const LyapOp lyap(p.state);
    return -christoffel(lyap, p.state, p.velocity, SymMat(uu)).mat();
  };

  for (int k = 0; k < n_steps; ++k) {
    const double t = k * h;
    const PathPoint p0 = path(t);
    const PathPoint pm = path(t + 0.5 * h);
    const PathPoint p1 = path(t + h);

    const Matrix k1 = rhs(p0, u);
    const Matrix k2 = rhs(pm, u + 0.5 * h * k1);
    const Matrix k3 = rhs(pm, u + 0.5 * h * k2);
    const Matrix k4 = rhs(p1, u + h * k3);
    u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!u.allFinite()) {
      throw NonFiniteSample("parallel_transport: non-finite iterate");
    }

    const SymMat us(u);
    const double norm_t = wasserstein_inner(p1.state, us, us);
    if (norm0 > 0.0) {
      drift = std::max(drift, std::abs(norm_t - norm0) / norm0);
    }
  }
  return TransportResult{SymMat(u), drift, n_steps};
}

}  // namespace

TransportResult parallel_transport(const GeodesicSpec& spec, const SymMat& v,
                                   int n_steps) {
  require_same_dim(spec.start.dim(), v.dim(), "parallel_transport");
  auto path = [&spec](double t) -> PathPoint {
    return PathPoint{geodesic_point(spec, t), geodesic_velocity(spec, t)};
  };
  return transport_along(path, v, n_steps);
}

TransportResult parallel_transport(const Curve& curve, const SymMat& v,
                                   int n_steps) {
  if (curve.states.size() < 2) {
    throw Error("parallel_transport: curve needs at least two samples");
  }
  if (!(curve.t1 > curve.t0)) {
    throw Error("parallel_transport: curve interval is empty");
  }
  const size_t segments = curve.states.size() - 1;
  const double span = curve.t1 - curve.t0;
  const double dt = span / static_cast<double>(segments);

  // Piecewise-linear state (convex combinations stay SPD) with the segment
  // difference quotient as velocity.
  auto path = [&](double s) -> PathPoint {
    const double t = std::min(std::max(s, 0.0), 1.0) * span;
    size_t i = std::min(static_cast<size_t>(t / dt), segments - 1);
    const double w = t / dt - static_cast<double>(i);
    const Matrix& a = curve.states[i].mat();
    const Matrix& b = curve.states[i + 1].mat();
    return PathPoint{SpdMat((1.0 - w) * a + w * b),
                     SymMat((b - a) * (span / dt))};
  };
  return transport_along(path, v, n_steps);
}

double riemannian_hessian_quadratic(const SpdMat& s, const SymMat& v,
                                    const SymMat& grad_phi,
                                    const SymMat& hess_phi_v) {
  require_same_dim(s.dim(), v.dim(), "riemannian_hessian_quadratic");
  const LyapOp lyap(s);
  const SymMat hess_nat(hess_phi_v.mat() * s.mat() + s.mat() * hess_phi_v.mat());
  const Matrix lv = lyap.solve(v.mat());
  return wasserstein_inner(lyap, hess_nat, v) +
         (grad_phi.mat() * lv * s.mat() * lv).trace();
}

double hessian_quadratic_fd(const SpdMat& s, const SymMat& v,
                            const std::function<double(const SpdMat&)>& phi,
                            double h) {
  const double f0 = phi(s);
  const double fp = phi(exp_map(s, h * v));
  const double fm = phi(exp_map(s, -h * v));
  return (fp - 2.0 * f0 + fm) / (h * h);
}

}  // namespace bws
