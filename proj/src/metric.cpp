#include "bws/metric.hpp"

#include <cassert>
#include <cmath>

namespace bws {

namespace {

// Rounding can push the trace residual slightly negative; W >= 0 by theory,
// so residuals of magnitude <= 1e-12 (relative) are clamped to zero.
double clamp_cost(double cost, double scale) {
  if (cost < 0.0 && cost >= -1e-12 * std::max(1.0, scale)) return 0.0;
  return cost;
}

double cov_cost_sym_form(const SpdMat& s1, const SpdMat& s2) {
  const Matrix r1 = spd_sqrt(s1).mat();
  const SpdMat inner(r1 * s2.mat() * r1);
  const double cross = spd_sqrt(inner).mat().trace();
  return s1.mat().trace() + s2.mat().trace() - 2.0 * cross;
}

double cov_cost_product_form(const SpdMat& s1, const SpdMat& s2) {
  const double cross = sqrt_product(s1, s2).trace();
  return s1.mat().trace() + s2.mat().trace() - 2.0 * cross;
}

double distance_from_cost(const GaussParam& g1, const GaussParam& g2,
                          double cov_cost) {
  const double scale = g1.cov.mat().trace() + g2.cov.mat().trace();
  const double mean_part = (g1.mean - g2.mean).squaredNorm();
  return std::sqrt(mean_part + clamp_cost(cov_cost, scale));
}

}  // namespace

double wasserstein_distance(const GaussParam& g1, const GaussParam& g2) {
  require_same_dim(g1.cov.dim(), g2.cov.dim(), "wasserstein_distance");
  const double cost = cov_cost_sym_form(g1.cov, g2.cov);
  assert(std::abs(cost - cov_cost_product_form(g1.cov, g2.cov)) <=
         1e-9 * std::max(1.0, std::abs(cost)));
  return distance_from_cost(g1, g2, cost);
}

double wasserstein_distance_product_form(const GaussParam& g1,
                                         const GaussParam& g2) {
  require_same_dim(g1.cov.dim(), g2.cov.dim(),
                   "wasserstein_distance_product_form");
  return distance_from_cost(g1, g2, cov_cost_product_form(g1.cov, g2.cov));
}

double wasserstein_inner(const LyapOp& lyap, const SymMat& u, const SymMat& v) {
  require_same_dim(lyap.dim(), u.dim(), "wasserstein_inner");
  require_same_dim(lyap.dim(), v.dim(), "wasserstein_inner");
  const Matrix lu = lyap.solve(u.mat());
  return 0.5 * (lu * v.mat()).trace();
}

double wasserstein_inner(const SpdMat& s, const SymMat& u, const SymMat& v) {
  return wasserstein_inner(LyapOp(s), u, v);
}

CouplingBounds coupling_bounds(const GaussParam& g1, const GaussParam& g2) {
  require_same_dim(g1.cov.dim(), g2.cov.dim(), "coupling_bounds");
  const Matrix r1 = spd_sqrt(g1.cov).mat();
  const SpdMat inner(r1 * g2.cov.mat() * r1);
  const double cross = spd_sqrt(inner).mat().trace();
  const double traces = g1.cov.mat().trace() + g2.cov.mat().trace();
  const double mean_part = (g1.mean - g2.mean).squaredNorm();
  const double min_cost =
      mean_part + clamp_cost(traces - 2.0 * cross, traces);
  const double max_cost = mean_part + traces + 2.0 * cross;
  return CouplingBounds{min_cost, max_cost, riccati_solve(g1.cov, g2.cov)};
}

double fisher_inner(const SpdMat& c, const SymMat& u, const SymMat& v) {
  require_same_dim(c.dim(), u.dim(), "fisher_inner");
  require_same_dim(c.dim(), v.dim(), "fisher_inner");
  const Matrix cinv = c.mat().inverse();
  return 0.5 * (u.mat() * cinv * v.mat() * cinv).trace();
}

ExpansionCheck expansion_check(const SpdMat& s, const SymMat& h,
                               double theta) {
  require_same_dim(s.dim(), h.dim(), "expansion_check");
  const SpdMat shifted(s.mat() + theta * h.mat());  // throws NotSpd outside the cone
  const Vector zero = Vector::Zero(s.dim());
  const double w = wasserstein_distance(GaussParam(zero, s),
                                        GaussParam(zero, shifted));
  const Matrix lh = LyapOp(s).solve(h.mat());
  const double rhs = theta * theta * (lh * s.mat() * lh).trace();
  return ExpansionCheck{w * w, rhs};
}

}  // namespace bws
