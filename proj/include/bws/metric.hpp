#pragma once

#include "bws/symmat.hpp"
#include "bws/types.hpp"

namespace bws {

// Exact coupling bounds between two Gaussians and the map attaining the
// minimum: T solves T Sigma1 T = Sigma2.
struct CouplingBounds {
  double min_cost;
  double max_cost;
  SpdMat optimal_map;
};

// L2-Wasserstein distance between Gaussian parameters,
//   sqrt(|mu1-mu2|^2 + Tr(S1 + S2 - 2 (S1^{1/2} S2 S1^{1/2})^{1/2})).
double wasserstein_distance(const GaussParam& g1, const GaussParam& g2);

// Same, via the trace of (S1 S2)^{1/2}; the two forms agree analytically.
double wasserstein_distance_product_form(const GaussParam& g1,
                                         const GaussParam& g2);

// Riemannian inner product at S: Tr(L_S[U] S L_S[V]) = 1/2 Tr(L_S[U] V).
double wasserstein_inner(const SpdMat& s, const SymMat& u, const SymMat& v);

// Variant reusing a precomputed Lyapunov operator at the base point.
double wasserstein_inner(const LyapOp& lyap, const SymMat& u, const SymMat& v);

CouplingBounds coupling_bounds(const GaussParam& g1, const GaussParam& g2);

// Fisher metric in the concentration parameterization:
// 1/2 Tr(U C^{-1} V C^{-1}).
double fisher_inner(const SpdMat& c, const SymMat& u, const SymMat& v);

// Second-order expansion probe: lhs = W^2(S, S + theta H),
// rhs = theta^2 Tr(L_S[H] S L_S[H]); lhs/rhs -> 1 as theta -> 0.
struct ExpansionCheck {
  double lhs;
  double rhs;
};

ExpansionCheck expansion_check(const SpdMat& s, const SymMat& h, double theta);

}  // namespace bws
