#pragma once

#include <optional>
#include <vector>

#include "bws/symmat.hpp"
#include "bws/types.hpp"

namespace bws {

// Open interval, possibly unbounded on either side.
struct Interval {
  double lo;  // -inf allowed
  double hi;  // +inf allowed

  bool contains(double t) const { return t > lo && t < hi; }
};

// Geodesic between two SPD matrices: Sigma(t) = M(t) Sigma0 M(t) with
// M(t) = (1-t) I + t T and T the Riccati solution of T Sigma0 T = Sigma1.
// The domain is the maximal open interval around [0,1] on which M(t) stays
// in the SPD cone.
struct GeodesicSpec {
  SpdMat start;
  SpdMat end;
  SpdMat map_T;
  Interval domain;
};

GeodesicSpec geodesic(const SpdMat& sigma0, const SpdMat& sigma1);

SpdMat geodesic_point(const GeodesicSpec& spec, double t);

// d/dt Sigma(t) = (T-I) Sigma0 M(t) + M(t) Sigma0 (T-I).
SymMat geodesic_velocity(const GeodesicSpec& spec, double t);

// Riemannian exponential: (L_C[V] + I) C (L_C[V] + I).
SpdMat exp_map(const SpdMat& c, const SymMat& v);

// Riemannian logarithm: (B C)^{1/2} + (C B)^{1/2} - 2 C.
SymMat log_map(const SpdMat& c, const SpdMat& b);

// Maximal open interval J_V = { theta : I + theta L_C[V] SPD }.
Interval domain_interval(const SpdMat& c, const SymMat& v);

// Derivative of V |-> Exp_C(V) in direction X at V.
SymMat exp_differential(const SpdMat& c, const SymMat& v, const SymMat& x);

// Orthogonal projection of X onto the horizontal space Sym(n) A at A:
// L_{A A^T}[X A^T + A X^T] A.
Matrix horizontal_projection(const Matrix& a, const Matrix& x);

// Horizontal lift of the tangent vector V at Sigma = A A^T: L_Sigma[V] A.
Matrix horizontal_lift(const SpdMat& s, const SymMat& v, const Matrix& a);

// The segment (1-t) A0 + t A1 is horizontal iff A1 A0^{-1} is SPD; then T =
// A1 A0^{-1} solves T (A0 A0^T) T = A1 A1^T.
struct HorizontalLine {
  bool horizontal;
  std::optional<SpdMat> map_T;
};

HorizontalLine is_horizontal_line(const Matrix& a0, const Matrix& a1);

// True iff the Riccati maps T_j from sigma0 to each of the others pairwise
// commute, i.e. the points span a geodesic surface.
bool geodesic_surface_commute_check(const SpdMat& sigma0,
                                    const std::vector<SpdMat>& others,
                                    double commute_tolerance = 1e-10);

}  // namespace bws
