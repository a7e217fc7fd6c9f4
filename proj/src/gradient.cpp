#include "bws/gradient.hpp"

#include <cmath>
#include <utility>

#include "bws/rng.hpp"

namespace bws {

SymMat natural_gradient(const SpdMat& s, const SymMat& g) {
  require_same_dim(s.dim(), g.dim(), "natural_gradient");
  return SymMat(g.mat() * s.mat() + s.mat() * g.mat());
}

std::pair<Vector, SymMat> natural_gradient_full(const GaussParam& g,
                                                const EuclideanGrad& grad) {
  require_same_dim(g.cov.dim(), grad.wrt_cov.dim(), "natural_gradient_full");
  Vector mean_part = grad.wrt_mean ? *grad.wrt_mean : Vector::Zero(g.cov.dim());
  require_same_dim(g.cov.dim(), mean_part.size(), "natural_gradient_full");
  return {std::move(mean_part), natural_gradient(g.cov, grad.wrt_cov)};
}

namespace {

struct FlowState {
  Vector mean;
  Matrix cov;  // raw storage; SPD is re-validated when stored in trajectory
};

FlowState flow_field(const GaussParam& at, const GradCallback& grad_fn,
                     double sign) {
  EuclideanGrad eg = [&] {
    try {
      return grad_fn(at);
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw CallbackFailure(std::string("gradient_flow callback: ") + e.what());
    }
  }();
  auto [mean_part, cov_part] = natural_gradient_full(at, eg);
  return FlowState{sign * mean_part, sign * cov_part.mat()};
}

}  // namespace

FlowTrajectory gradient_flow(const GaussParam& start, const GradCallback& grad_fn,
                             double step, int n_steps, StepMethod method,
                             FlowDirection direction) {
  if (step <= 0.0) throw Error("gradient_flow: step must be positive");
  if (n_steps < 1) throw Error("gradient_flow: n_steps must be positive");
  const double sign = direction == FlowDirection::kAscent ? 1.0 : -1.0;

  FlowTrajectory out;
  out.method = method;
  out.times.push_back(0.0);
  out.states.push_back(start.cov);
  out.means.push_back(start.mean);

  Vector mu = start.mean;
  Matrix sigma = start.cov.mat();

  for (int k = 0; k < n_steps; ++k) {
    const double t = k * step;
    try {
      Vector mu_next;
      Matrix sigma_next;
      if (method == StepMethod::kEuler) {
        const FlowState d = flow_field(GaussParam(mu, SpdMat(sigma)), grad_fn, sign);
        mu_next = mu + step * d.mean;
        sigma_next = sigma + step * d.cov;
      } else {
        const FlowState k1 = flow_field(GaussParam(mu, SpdMat(sigma)), grad_fn, sign);
        const FlowState k2 = flow_field(
            GaussParam(mu + 0.5 * step * k1.mean,
                       SpdMat(sigma + 0.5 * step * k1.cov)),
            grad_fn, sign);
        const FlowState k3 = flow_field(
            GaussParam(mu + 0.5 * step * k2.mean,
                       SpdMat(sigma + 0.5 * step * k2.cov)),
            grad_fn, sign);
        const FlowState k4 = flow_field(
            GaussParam(mu + step * k3.mean, SpdMat(sigma + step * k3.cov)),
            grad_fn, sign);
        mu_next = mu + (step / 6.0) * (k1.mean + 2.0 * k2.mean +
                                       2.0 * k3.mean + k4.mean);
        sigma_next = sigma + (step / 6.0) * (k1.cov + 2.0 * k2.cov +
                                             2.0 * k3.cov + k4.cov);
      }
      SpdMat validated(sigma_next);  // throws NotSpd at the cone boundary
      mu = std::move(mu_next);
      sigma = validated.mat();
      out.times.push_back((k + 1) * step);
      out.states.push_back(std::move(validated));
      out.means.push_back(mu);
    } catch (const NotSpd&) {
      out.cone_exit = ConeExitInfo{k, t};
      return out;
    }
  }
  return out;
}

SpdMat entropy_flow(const SpdMat& start, double t) {
  const double lambda_min =
      Eigen::SelfAdjointEigenSolver<Matrix>(start.mat(), Eigen::EigenvaluesOnly)
          .eigenvalues()
          .minCoeff();
  if (!(2.0 * t < lambda_min)) {
    throw OutOfDomain("entropy_flow: defined only for 2t < lambda_min = " +
                      std::to_string(lambda_min));
  }
  const Eigen::Index n = start.dim();
  return SpdMat(start.mat() - 2.0 * t * Matrix::Identity(n, n));
}

namespace {

// Draw Z_1..Z_N in a fixed sequential order, independent of threading.
std::vector<Vector> draw_samples(Eigen::Index n, const McConfig& cfg) {
  if (cfg.sample_count < 1) throw Error("McConfig: sample_count must be >= 1");
  GaussianRng rng(cfg.seed);
  std::vector<Vector> z(static_cast<size_t>(cfg.sample_count));
  for (auto& zk : z) zk = rng.next_vector(n);
  return z;
}

template <typename Eval>
void evaluate_samples(int count, bool parallel, const Eval& eval) {
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int k = 0; k < count; ++k) eval(k);
  } else {
    for (int k = 0; k < count; ++k) eval(k);
  }
}

// Library errors pass through; anything raised by the user's integrand is
// reported as a CallbackFailure.
void rethrow_if_set(std::exception_ptr& err) {
  if (!err) return;
  try {
    std::rethrow_exception(err);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw CallbackFailure(std::string("sample callback: ") + e.what());
  }
}

}  // namespace

McGradient mc_grad_pathwise(const ScalarFn& f, const VectorFn& grad_f,
                            const GaussParam& g, const McConfig& cfg) {
  const Eigen::Index n = g.cov.dim();
  const std::vector<Vector> z = draw_samples(n, cfg);
  const Matrix root = spd_sqrt(g.cov).mat();
  const int count = cfg.sample_count;

  std::vector<Vector> grads(static_cast<size_t>(count));
  std::exception_ptr err;
  evaluate_samples(count, cfg.parallel, [&](int k) {
    try {
      const Vector x = root * z[static_cast<size_t>(k)] + g.mean;
      Vector gk = grad_f(x);
      if (gk.size() != n || !gk.allFinite() || !std::isfinite(f(x))) {
        throw NonFiniteSample("mc_grad_pathwise: non-finite sample value");
      }
      grads[static_cast<size_t>(k)] = std::move(gk);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  });
  rethrow_if_set(err);

  // Serial reduction in sample order keeps results thread-count independent.
  Vector mean_grad = Vector::Zero(n);
  Matrix xi = Matrix::Zero(n, n);
  for (int k = 0; k < count; ++k) {
    const Vector& zk = z[static_cast<size_t>(k)];
    const Vector& gk = grads[static_cast<size_t>(k)];
    mean_grad += gk;
    xi += zk * gk.transpose() + gk * zk.transpose();
  }
  mean_grad /= count;
  xi /= count;

  const Matrix l_xi = LyapOp(spd_sqrt(g.cov)).solve(symmetrize(xi));
  const Matrix grad2 = g.cov.mat() * l_xi + l_xi * g.cov.mat();
  return McGradient{std::move(mean_grad), SymMat(grad2)};
}

McGradient mc_grad_score(const ScalarFn& f, const GaussParam& g,
                         const McConfig& cfg) {
  const Eigen::Index n = g.cov.dim();
  const std::vector<Vector> z = draw_samples(n, cfg);
  const Matrix root = spd_sqrt(g.cov).mat();
  const int count = cfg.sample_count;

  std::vector<double> values(static_cast<size_t>(count));
  std::exception_ptr err;
  evaluate_samples(count, cfg.parallel, [&](int k) {
    try {
      const Vector x = root * z[static_cast<size_t>(k)] + g.mean;
      const double fx = f(x);
      if (!std::isfinite(fx)) {
        throw NonFiniteSample("mc_grad_score: non-finite sample value");
      }
      values[static_cast<size_t>(k)] = fx;
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  });
  rethrow_if_set(err);

  Vector first = Vector::Zero(n);
  Matrix m = Matrix::Zero(n, n);
  for (int k = 0; k < count; ++k) {
    const Vector centered = root * z[static_cast<size_t>(k)];  // X_k - mu
    const double fx = values[static_cast<size_t>(k)];
    first += fx * centered;
    m += fx * (centered * centered.transpose() - g.cov.mat());
  }
  first /= count;
  m = symmetrize(m / count);

  const Matrix sigma_inv = g.cov.mat().inverse();
  const Matrix grad2 = m * sigma_inv + sigma_inv * m;
  return McGradient{sigma_inv * first, SymMat(grad2)};
}

}  // namespace bws
