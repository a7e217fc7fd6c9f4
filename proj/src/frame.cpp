#include "bws/frame.hpp"

#include <string>

namespace bws {
namespace frame {

namespace {

void check_index(const FrameIndex& idx, int n) {
  if (idx.p < 1 || idx.q < 1 || idx.p > n || idx.q > n || idx.p > idx.q) {
    throw IndexOutOfRange("frame index (" + std::to_string(idx.p) + "," +
                          std::to_string(idx.q) + ") invalid for n = " +
                          std::to_string(n));
  }
}

}  // namespace

int frame_dim(int n) { return n * (n + 1) / 2; }

std::vector<FrameIndex> canonical_indices(int n) {
  std::vector<FrameIndex> out;
  out.reserve(static_cast<size_t>(frame_dim(n)));
  for (int p = 1; p <= n; ++p) {
    for (int q = p; q <= n; ++q) out.push_back(FrameIndex{p, q});
  }
  return out;
}

int flat_index(const FrameIndex& idx, int n) {
  check_index(idx, n);
  // Rows before p contribute n - (r - 1) entries each.
  int offset = 0;
  for (int r = 1; r < idx.p; ++r) offset += n - r + 1;
  return offset + (idx.q - idx.p);
}

SymMat basis_matrix(const FrameIndex& idx, int n) {
  check_index(idx, n);
  Matrix e = Matrix::Zero(n, n);
  e(idx.p - 1, idx.q - 1) += 1.0;
  e(idx.q - 1, idx.p - 1) += 1.0;
  return SymMat(e);
}

SymMat frame_field(const SpdMat& s, const FrameIndex& idx) {
  const Matrix e = basis_matrix(idx, static_cast<int>(s.dim())).mat();
  return SymMat(e * s.mat() + s.mat() * e);
}

Matrix metric_matrix(const SpdMat& s) {
  const int n = static_cast<int>(s.dim());
  const auto indices = canonical_indices(n);
  const int m = frame_dim(n);
  std::vector<Matrix> basis;
  basis.reserve(indices.size());
  for (const auto& idx : indices) basis.push_back(basis_matrix(idx, n).mat());

  Matrix g(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = a; b < m; ++b) {
      const double v = (basis[static_cast<size_t>(a)] * s.mat() *
                        basis[static_cast<size_t>(b)])
                           .trace();
      g(a, b) = v;
      g(b, a) = v;
    }
  }
  return g;
}

FrameCoords coords_in_frame(const SpdMat& s, const SymMat& x) {
  require_same_dim(s.dim(), x.dim(), "coords_in_frame");
  const int n = static_cast<int>(s.dim());
  const auto indices = canonical_indices(n);
  const int m = frame_dim(n);

  Vector rhs(m);
  for (int a = 0; a < m; ++a) {
    rhs(a) = 0.5 * (x.mat() * basis_matrix(indices[static_cast<size_t>(a)], n)
                                  .mat())
                       .trace();
  }

  const Matrix g = metric_matrix(s);
  Eigen::LLT<Matrix> llt(g);
  if (llt.info() != Eigen::Success) {
    throw SingularMetric("coords_in_frame: frame Gram matrix not SPD");
  }
  return FrameCoords{llt.solve(rhs)};
}

SymMat from_coords(const SpdMat& s, const FrameCoords& coords) {
  const int n = static_cast<int>(s.dim());
  if (coords.coords.size() != frame_dim(n)) {
    throw DimMismatch("from_coords: coordinate length mismatch");
  }
  const auto indices = canonical_indices(n);
  Matrix out = Matrix::Zero(n, n);
  for (size_t a = 0; a < indices.size(); ++a) {
    out += coords.coords(static_cast<Eigen::Index>(a)) *
           frame_field(s, indices[a]).mat();
  }
  return SymMat(out);
}

SymMat frame_covariant(const SpdMat& s, const FrameIndex& alpha,
                       const FrameIndex& beta) {
  const int n = static_cast<int>(s.dim());
  const Matrix ea = basis_matrix(alpha, n).mat();
  const Matrix eb = basis_matrix(beta, n).mat();
  return SymMat(eb * ea * s.mat() + s.mat() * ea * eb);
}

SymMat frame_christoffel(const SpdMat& s, const FrameIndex& alpha,
                         const FrameIndex& beta) {
  const int n = static_cast<int>(s.dim());
  const Matrix ea = basis_matrix(alpha, n).mat();
  const Matrix eb = basis_matrix(beta, n).mat();
  return SymMat(-(ea * s.mat() * eb + eb * s.mat() * ea));
}

}  // namespace frame
}  // namespace bws
