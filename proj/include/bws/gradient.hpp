#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "bws/symmat.hpp"
#include "bws/types.hpp"

namespace bws {

// Gradient convention: all Euclidean gradients are taken with respect to
// <A,B>_2 = 1/2 Tr(A B). Under this convention the entropy gradient is
// Sigma^{-1} and its natural gradient is exactly 2I. Gradients expressed in
// the full-trace convention are half as large; see full_trace_to_half_trace.
struct EuclideanGrad {
  std::optional<Vector> wrt_mean;
  SymMat wrt_cov;
};

// Convert a full-trace-convention covariance gradient (d phi = Tr(g dSigma))
// to the <.,.>_2 convention used throughout: g_2 = 2 g_full.
inline SymMat full_trace_to_half_trace(const SymMat& g_full) {
  return 2.0 * g_full;
}

enum class StepMethod { kEuler, kRk4 };
enum class FlowDirection { kAscent, kDescent };

struct ConeExitInfo {
  int step_index;   // first step whose iterate left the cone
  double time;      // flow time at that step
};

struct FlowTrajectory {
  std::vector<double> times;
  std::vector<SpdMat> states;
  std::vector<Vector> means;  // empty when the flow ignores the mean
  StepMethod method;
  std::optional<ConeExitInfo> cone_exit;
};

struct McConfig {
  int sample_count = 1;
  std::uint64_t seed = 0;
  // Evaluate f on the pre-drawn samples with OpenMP. The reduction is always
  // serial in sample order, so results are bit-identical either way.
  bool parallel = true;
};

// Natural (Wasserstein-Riemannian) gradient: Grad phi = g Sigma + Sigma g
// for the <.,.>_2 Euclidean gradient g.
SymMat natural_gradient(const SpdMat& s, const SymMat& g);

// Full-Gaussian version: the mean component is already Riemannian, the
// covariance component goes through natural_gradient.
std::pair<Vector, SymMat> natural_gradient_full(const GaussParam& g,
                                                const EuclideanGrad& grad);

using GradCallback = std::function<EuclideanGrad(const GaussParam&)>;

// Integrates the natural-gradient flow of the callback's field with a fixed
// step. If an iterate leaves the SPD cone the partial trajectory is returned
// with cone_exit set; this is a structured outcome, not an exception.
FlowTrajectory gradient_flow(const GaussParam& start, const GradCallback& grad_fn,
                             double step, int n_steps, StepMethod method,
                             FlowDirection direction);

// Closed form of the entropy gradient flow: Sigma(0) - 2t I, defined while
// 2t < lambda_min(Sigma(0)).
SpdMat entropy_flow(const SpdMat& start, double t);

using ScalarFn = std::function<double(const Vector&)>;
using VectorFn = std::function<Vector(const Vector&)>;

struct McGradient {
  Vector wrt_mean;
  SymMat natural_wrt_cov;  // already the natural gradient grad_2
};

// Pathwise Monte Carlo estimator of the natural gradient of
// phi(mu,Sigma) = E[f(X)], X = Sigma^{1/2} Z + mu. Uses grad_f:
//   mean part   = avg grad f(X_k),
//   Xi_hat      = avg (Z_k grad^T f(X_k) + grad f(X_k) Z_k^T),
//   grad_2      = Sigma L_{Sigma^{1/2}}[Xi_hat] + L_{Sigma^{1/2}}[Xi_hat] Sigma.
// Deterministic given (seed, sample_count) regardless of thread count.
McGradient mc_grad_pathwise(const ScalarFn& f, const VectorFn& grad_f,
                            const GaussParam& g, const McConfig& cfg);

// Score-function estimator; needs only f:
//   mean part = Sigma^{-1} avg f(X_k)(X_k - mu),
//   M_hat     = avg f(X_k)((X_k - mu)(X_k - mu)^T - Sigma),
//   grad_2    = M_hat Sigma^{-1} + Sigma^{-1} M_hat.
McGradient mc_grad_score(const ScalarFn& f, const GaussParam& g,
                         const McConfig& cfg);

}  // namespace bws
