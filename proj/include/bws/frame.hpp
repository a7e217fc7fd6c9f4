#pragma once

#include <vector>

#include "bws/symmat.hpp"
#include "bws/types.hpp"

namespace bws {
namespace frame {

// Index (p,q), 1-based, p <= q, into the generating set E^{p,q}. The
// canonical enumeration is lexicographic in (p,q): (1,1), (1,2), ...,
// (1,n), (2,2), ..., (n,n); its length is n(n+1)/2. This order is part of
// the FrameCoords wire contract.
struct FrameIndex {
  int p;
  int q;
};

int frame_dim(int n);

std::vector<FrameIndex> canonical_indices(int n);

// Position of (p,q) in the canonical order.
int flat_index(const FrameIndex& idx, int n);

// Coordinates of a tangent vector in the moving frame, canonical order.
struct FrameCoords {
  Vector coords;
};

// E^{p,q} = e_p e_q^T + e_q e_p^T, unnormalized.
SymMat basis_matrix(const FrameIndex& idx, int n);

// Moving frame F^a(S) = E^a S + S E^a; satisfies L_S[F^a(S)] = E^a.
SymMat frame_field(const SpdMat& s, const FrameIndex& idx);

// Gram matrix g_ab(S) = Tr(E^a S E^b) over the canonical order.
Matrix metric_matrix(const SpdMat& s);

// Coordinates x_a with X = sum_a x_a F^a(S): x = g^{-1} [<X, E^c>_2]_c.
FrameCoords coords_in_frame(const SpdMat& s, const SymMat& x);

// Reconstruct sum_a coords_a F^a(S).
SymMat from_coords(const SpdMat& s, const FrameCoords& coords);

// Covariant derivative of one frame field along another:
// D_{F^a} F^b = E^b E^a S + S E^a E^b.
SymMat frame_covariant(const SpdMat& s, const FrameIndex& alpha,
                       const FrameIndex& beta);

// Christoffel action on frame fields: Gamma(S; F^a, F^b) =
// -(E^a S E^b + E^b S E^a).
SymMat frame_christoffel(const SpdMat& s, const FrameIndex& alpha,
                         const FrameIndex& beta);

}  // namespace frame
}  // namespace bws
