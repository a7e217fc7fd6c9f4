#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bws/frame.hpp"
#include "bws/metric.hpp"
#include "bws/second_order.hpp"
#include "bws/symmat.hpp"
#include "test_util.hpp"

using namespace bws;
using namespace bws::frame;
using testutil::rand_spd;
using testutil::rand_sym;
using testutil::rel_err;

TEST_CASE("index bookkeeping") {
  CHECK(frame_dim(1) == 1);
  CHECK(frame_dim(4) == 10);

  const auto idx3 = canonical_indices(3);
  REQUIRE(idx3.size() == 6);
  CHECK(idx3[0].p == 1);
  CHECK(idx3[0].q == 1);
  CHECK(idx3[2].p == 1);
  CHECK(idx3[2].q == 3);
  CHECK(idx3[3].p == 2);
  CHECK(idx3[3].q == 2);
  for (size_t a = 0; a < idx3.size(); ++a) {
    CHECK(flat_index(idx3[a], 3) == static_cast<int>(a));
  }

  CHECK_THROWS_AS(flat_index(FrameIndex{2, 1}, 3), IndexOutOfRange);
  CHECK_THROWS_AS(basis_matrix(FrameIndex{0, 1}, 3), IndexOutOfRange);
  CHECK_THROWS_AS(basis_matrix(FrameIndex{1, 4}, 3), IndexOutOfRange);
}

TEST_CASE("basis_matrix fixtures") {
  Matrix e11(2, 2), e12(2, 2);
  e11 << 2, 0, 0, 0;
  e12 << 0, 1, 1, 0;
  CHECK(basis_matrix(FrameIndex{1, 1}, 2).mat() == e11);
  CHECK(basis_matrix(FrameIndex{1, 2}, 2).mat() == e12);

  for (int n = 1; n <= 4; ++n) {
    for (const FrameIndex& idx : canonical_indices(n)) {
      const double tr = basis_matrix(idx, n).mat().trace();
      CHECK(tr == (idx.p == idx.q ? 2.0 : 0.0));
    }
  }
}

TEST_CASE("product and inner-product identities, exhaustive n <= 4") {
  for (int n = 1; n <= 4; ++n) {
    const auto indices = canonical_indices(n);
    for (const FrameIndex& a : indices) {
      for (const FrameIndex& b : indices) {
        const Matrix ea = basis_matrix(a, n).mat();
        const Matrix eb = basis_matrix(b, n).mat();

        // E^{pq} E^{rs} + E^{rs} E^{pq} expands over Kronecker deltas into
        // E^{ps}, E^{pr}, E^{qs}, E^{qr} (unordered index pairs).
        auto e_of = [n](int p, int q) {
          return basis_matrix(FrameIndex{std::min(p, q), std::max(p, q)}, n)
              .mat();
        };
        Matrix want = Matrix::Zero(n, n);
        if (a.q == b.p) want += e_of(a.p, b.q);
        if (a.q == b.q) want += e_of(a.p, b.p);
        if (a.p == b.p) want += e_of(a.q, b.q);
        if (a.p == b.q) want += e_of(a.q, b.p);
        CHECK((ea * eb + eb * ea) == want);

        // <E^a, E^b>_2 is 0 for distinct pairs, 1 off-diagonal, 2 diagonal.
        const double inner = 0.5 * (ea * eb).trace();
        double want_inner = 0.0;
        if (a.p == b.p && a.q == b.q) want_inner = a.p == a.q ? 2.0 : 1.0;
        CHECK(inner == want_inner);
      }
    }
  }
}

TEST_CASE("frame_field") {
  std::mt19937_64 rng(61);
  SUBCASE("at the identity") {
    for (const FrameIndex& idx : canonical_indices(3)) {
      CHECK(frame_field(SpdMat::Identity(3), idx).mat() ==
            Matrix(2.0 * basis_matrix(idx, 3).mat()));
    }
  }
  SUBCASE("Lyapunov round-trip") {
    const SpdMat s = rand_spd(rng, 3);
    for (const FrameIndex& idx : canonical_indices(3)) {
      CHECK(rel_err(lyapunov_solve(s, frame_field(s, idx)).mat(),
                    basis_matrix(idx, 3).mat()) < 1e-10);
    }
  }
  SUBCASE("diagonal fixture") {
    Matrix d(2, 2), want(2, 2);
    d << 1, 0, 0, 2;
    want << 0, 3, 3, 0;
    CHECK(frame_field(SpdMat(d), FrameIndex{1, 2}).mat() == want);
  }
}

TEST_CASE("metric_matrix") {
  std::mt19937_64 rng(62);
  SUBCASE("identity fixtures") {
    const Matrix g = metric_matrix(SpdMat::Identity(2));
    const int i12 = flat_index(FrameIndex{1, 2}, 2);
    const int i11 = flat_index(FrameIndex{1, 1}, 2);
    const int i22 = flat_index(FrameIndex{2, 2}, 2);
    CHECK(g(i12, i12) == 2.0);
    CHECK(g(i11, i22) == 0.0);
  }
  SUBCASE("Gram consistency with the Riemannian inner product") {
    const SpdMat s = rand_spd(rng, 3);
    const Matrix g = metric_matrix(s);
    const auto indices = canonical_indices(3);
    for (size_t a = 0; a < indices.size(); ++a) {
      for (size_t b = 0; b < indices.size(); ++b) {
        const double w =
            wasserstein_inner(s, frame_field(s, indices[a]),
                              frame_field(s, indices[b]));
        CHECK(w == doctest::Approx(g(static_cast<int>(a),
                                     static_cast<int>(b))).epsilon(1e-9));
      }
    }
    // Gram matrix of a basis is SPD.
    Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("coords_in_frame") {
  std::mt19937_64 rng(63);
  SUBCASE("frame members give indicator coordinates") {
    const SpdMat s = rand_spd(rng, 3);
    const auto indices = canonical_indices(3);
    for (size_t b = 0; b < indices.size(); ++b) {
      const FrameCoords x = coords_in_frame(s, frame_field(s, indices[b]));
      for (Eigen::Index a = 0; a < x.coords.size(); ++a) {
        const double want = static_cast<size_t>(a) == b ? 1.0 : 0.0;
        CHECK(std::abs(x.coords(a) - want) < 1e-9);
      }
    }
  }
  SUBCASE("round-trip at the identity and at random bases") {
    for (int it = 0; it < 20; ++it) {
      const SpdMat s = it == 0 ? SpdMat::Identity(4) : rand_spd(rng, 4);
      const SymMat x = rand_sym(rng, 4);
      const FrameCoords coords = coords_in_frame(s, x);
      CHECK(rel_err(from_coords(s, coords).mat(), x.mat()) < 1e-9);
    }
  }
  SUBCASE("metric consistency") {
    const SpdMat s = rand_spd(rng, 3);
    const SymMat x = rand_sym(rng, 3), y = rand_sym(rng, 3);
    const Vector xc = coords_in_frame(s, x).coords;
    const Vector yc = coords_in_frame(s, y).coords;
    const Matrix g = metric_matrix(s);
    CHECK(wasserstein_inner(s, x, y) ==
          doctest::Approx(xc.dot(g * yc)).epsilon(1e-9));
  }
}

TEST_CASE("frame_covariant") {
  std::mt19937_64 rng(64);
  SUBCASE("at the identity") {
    for (const FrameIndex& a : canonical_indices(2)) {
      for (const FrameIndex& b : canonical_indices(2)) {
        const Matrix ea = basis_matrix(a, 2).mat();
        const Matrix eb = basis_matrix(b, 2).mat();
        CHECK(frame_covariant(SpdMat::Identity(2), a, b).mat() ==
              Matrix(eb * ea + ea * eb));
      }
    }
    CHECK(frame_covariant(SpdMat::Identity(2), FrameIndex{1, 2},
                          FrameIndex{1, 2})
              .mat() == Matrix(2.0 * Matrix::Identity(2, 2)));
  }
  SUBCASE("agrees with the covariant derivative of the frame fields") {
    const SpdMat s = rand_spd(rng, 3);
    for (const FrameIndex& a : canonical_indices(3)) {
      for (const FrameIndex& b : canonical_indices(3)) {
        const SymMat fa = frame_field(s, a);
        const Matrix eb = basis_matrix(b, 3).mat();
        // d_{F^a} F^b at S: direction derivative of S -> E^b S + S E^b.
        const SymMat dfb(eb * fa.mat() + fa.mat() * eb);
        const SymMat got = covariant_derivative(
            s, fa, VectorFieldEval{frame_field(s, b), dfb});
        const Matrix want = frame_covariant(s, a, b).mat();
        // Some pairs vanish identically, so compare on an absolute scale.
        CHECK((want - got.mat()).norm() < 1e-10 * (1 + s.mat().norm()));
      }
    }
  }
}

TEST_CASE("frame_christoffel matches the Christoffel tensor") {
  std::mt19937_64 rng(65);
  const SpdMat s = rand_spd(rng, 3);
  for (const FrameIndex& a : canonical_indices(3)) {
    for (const FrameIndex& b : canonical_indices(3)) {
      const SymMat want = christoffel(s, frame_field(s, a), frame_field(s, b));
      CHECK(rel_err(frame_christoffel(s, a, b).mat(), want.mat()) < 1e-10);
    }
  }
}
