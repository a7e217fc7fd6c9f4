#pragma once

#include <functional>
#include <vector>

#include "bws/geodesics.hpp"
#include "bws/symmat.hpp"
#include "bws/types.hpp"

namespace bws {

// Value of a vector field Y at a point together with its flat directional
// derivative d_X Y there.
struct VectorFieldEval {
  SymMat value;
  SymMat directional_derivative;
};

// Christoffel tensor of the Wasserstein metric,
//   Gamma(S;X,Y) = sym{ S L[Y] L[X] + L[Y] L[X] S - L[X] Y - L[Y] X },
// symmetric and bilinear in (X, Y).
SymMat christoffel(const SpdMat& s, const SymMat& x, const SymMat& y);
SymMat christoffel(const LyapOp& lyap, const SpdMat& s, const SymMat& x,
                   const SymMat& y);

// Levi-Civita derivative D_X Y = d_X Y + Gamma(S; X, Y).
SymMat covariant_derivative(const SpdMat& s, const SymMat& x,
                            const VectorFieldEval& y_eval);

// Implicit form of <D_X Y, Z>_S; the d_X Y term is supplied by the caller.
// Kept as an independent route for cross-checking the explicit formula.
double covariant_derivative_inner(const SpdMat& s, const SymMat& x,
                                  const VectorFieldEval& y_eval,
                                  const SymMat& z);

struct TransportResult {
  SymMat transported;   // U(1)
  double norm_drift;    // max relative deviation of W_{Sigma(t)}(U,U)
  int steps;
};

// Parallel transport of V along the geodesic, integrating
//   dU/dt + Gamma(Sigma(t); dSigma/dt, U) = 0, U(0) = V
// with fixed-step classical RK4.
TransportResult parallel_transport(const GeodesicSpec& spec, const SymMat& v,
                                   int n_steps = 1000);

// Sampled curve on a uniform grid over [t0, t1]; velocities are
// reconstructed by central differences, so accuracy is limited by the grid.
struct Curve {
  double t0 = 0.0;
  double t1 = 1.0;
  std::vector<SpdMat> states;
};

TransportResult parallel_transport(const Curve& curve, const SymMat& v,
                                   int n_steps = 1000);

// Quadratic form Hess phi(S)(V,V) given the caller's gradient and Hessian
// action in the <.,.>_2 convention:
//   <hess S + S hess, V>_S + Tr(grad L_S[V] S L_S[V]).
double riemannian_hessian_quadratic(const SpdMat& s, const SymMat& v,
                                    const SymMat& grad_phi,
                                    const SymMat& hess_phi_v);

// Testing convenience: central-difference Hessian quadratic form of a scalar
// field along the geodesic t -> Exp_S(tV).
double hessian_quadratic_fd(const SpdMat& s, const SymMat& v,
                            const std::function<double(const SpdMat&)>& phi,
                            double h = 1e-5);

}  // namespace bws
