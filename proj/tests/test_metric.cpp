#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bws/metric.hpp"
#include "bws/symmat.hpp"
#include "test_util.hpp"

using namespace bws;
using testutil::rand_spd;
using testutil::rand_sym;
using testutil::rand_vec;
using testutil::rel_err;

namespace {
Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

GaussParam zero_mean(Matrix cov) {
  SpdMat s{std::move(cov)};
  Vector mean = Vector::Zero(s.dim());
  return GaussParam(std::move(mean), std::move(s));
}
}  // namespace

TEST_CASE("wasserstein_distance fixtures") {
  const GaussParam id = zero_mean(Matrix::Identity(2, 2));
  CHECK(wasserstein_distance(id, id) == 0.0);

  const GaussParam four = zero_mean(4.0 * Matrix::Identity(2, 2));
  CHECK(wasserstein_distance(id, four) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  Vector m1(2), m2(2);
  m1 << 1, 0;
  m2 << 0, 1;
  const GaussParam g1(m1, SpdMat::Identity(2));
  const GaussParam g2(m2, SpdMat::Identity(2));
  CHECK(wasserstein_distance(g1, g2) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("two algebraic distance forms agree") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 50; ++it) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const GaussParam a(rand_vec(rng, n), rand_spd(rng, n));
    const GaussParam b(rand_vec(rng, n), rand_spd(rng, n));
    const double w1 = wasserstein_distance(a, b);
    const double w2 = wasserstein_distance_product_form(a, b);
    CHECK(std::abs(w1 - w2) <= 1e-10 * (1 + w1));
  }
}

TEST_CASE("commuting-case closed form") {
  // Diagonal covariances: W^2 = sum (sqrt(l_i) - sqrt(n_i))^2.
  const GaussParam a = zero_mean(diag2(1, 4));
  const GaussParam b = zero_mean(diag2(4, 1));
  const double want = std::sqrt((1.0 - 2.0) * (1.0 - 2.0) * 2);
  CHECK(std::abs(wasserstein_distance(a, b) - want) < 1e-12);

  Matrix da = Matrix::Zero(3, 3), db = Matrix::Zero(3, 3);
  da.diagonal() << 1, 2, 9;
  db.diagonal() << 4, 2, 1;
  double w2 = 0;
  for (int i = 0; i < 3; ++i) {
    const double d = std::sqrt(da(i, i)) - std::sqrt(db(i, i));
    w2 += d * d;
  }
  CHECK(std::abs(wasserstein_distance(zero_mean(da), zero_mean(db)) -
                 std::sqrt(w2)) < 1e-12);
}

TEST_CASE("metric axioms on random triples") {
  std::mt19937_64 rng(12);
  for (int it = 0; it < 100; ++it) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const GaussParam a(rand_vec(rng, n), rand_spd(rng, n));
    const GaussParam b(rand_vec(rng, n), rand_spd(rng, n));
    const GaussParam c(rand_vec(rng, n), rand_spd(rng, n));
    const double ab = wasserstein_distance(a, b);
    const double ba = wasserstein_distance(b, a);
    const double ac = wasserstein_distance(a, c);
    const double cb = wasserstein_distance(c, b);
    CHECK(std::abs(ab - ba) <= 1e-12 * (1 + ab));
    CHECK(ab >= 0.0);
    CHECK(ac + cb - ab >= -1e-10);
    // The self-distance is sqrt of a cancellation, so roughly sqrt(eps).
    CHECK(wasserstein_distance(a, a) <= 1e-6);
  }
}

TEST_CASE("homogeneity") {
  std::mt19937_64 rng(13);
  for (double lambda : {0.5, 2.0, 7.0}) {
    const int n = 3;
    const Vector m1 = rand_vec(rng, n), m2 = rand_vec(rng, n);
    const SpdMat s1 = rand_spd(rng, n), s2 = rand_spd(rng, n);
    const double w = wasserstein_distance(GaussParam(m1, s1), GaussParam(m2, s2));
    const double ws = wasserstein_distance(
        GaussParam(lambda * m1, SpdMat(lambda * lambda * s1.mat())),
        GaussParam(lambda * m2, SpdMat(lambda * lambda * s2.mat())));
    CHECK(ws == doctest::Approx(lambda * w).epsilon(1e-10));
  }
}

TEST_CASE("wasserstein_inner") {
  std::mt19937_64 rng(14);
  SUBCASE("base I gives quarter trace") {
    const SymMat u = rand_sym(rng, 3), v = rand_sym(rng, 3);
    CHECK(wasserstein_inner(SpdMat::Identity(3), u, v) ==
          doctest::Approx(0.25 * (u.mat() * v.mat()).trace()).epsilon(1e-12));
  }
  SUBCASE("U = V = S gives Tr(S)/4") {
    const SpdMat s = rand_spd(rng, 4);
    CHECK(wasserstein_inner(s, s.sym(), s.sym()) ==
          doctest::Approx(s.mat().trace() / 4.0).epsilon(1e-12));
  }
  SUBCASE("symmetry, bilinearity, positivity") {
    for (int it = 0; it < 20; ++it) {
      const SpdMat s = rand_spd(rng, 3);
      const SymMat u = rand_sym(rng, 3), v = rand_sym(rng, 3),
                   w = rand_sym(rng, 3);
      const double uv = wasserstein_inner(s, u, v);
      CHECK(uv == doctest::Approx(wasserstein_inner(s, v, u)).epsilon(1e-12));
      CHECK(wasserstein_inner(s, u + 2.0 * w, v) ==
            doctest::Approx(uv + 2.0 * wasserstein_inner(s, w, v))
                .epsilon(1e-10));
      CHECK(wasserstein_inner(s, u, u) > 0.0);
    }
  }
  SUBCASE("matches half-trace form") {
    const SpdMat s = rand_spd(rng, 4);
    const SymMat u = rand_sym(rng, 4), v = rand_sym(rng, 4);
    const double half =
        0.5 * (lyapunov_solve(s, u).mat() * v.mat()).trace();
    CHECK(wasserstein_inner(s, u, v) == doctest::Approx(half).epsilon(1e-12));
  }
}

TEST_CASE("coupling_bounds fixtures") {
  SUBCASE("identical identity Gaussians") {
    const GaussParam g = zero_mean(Matrix::Identity(2, 2));
    const CouplingBounds cb = coupling_bounds(g, g);
    CHECK(std::abs(cb.min_cost) < 1e-12);
    CHECK(cb.max_cost == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(rel_err(cb.optimal_map.mat(), Matrix::Identity(2, 2)) < 1e-12);
  }
  SUBCASE("diagonal swap") {
    const CouplingBounds cb =
        coupling_bounds(zero_mean(diag2(1, 4)), zero_mean(diag2(4, 1)));
    CHECK(cb.min_cost == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(cb.max_cost == doctest::Approx(18.0).epsilon(1e-12));
    CHECK(rel_err(cb.optimal_map.mat(), diag2(2, 0.5)) < 1e-12);
  }
  SUBCASE("scalar case") {
    Matrix a(1, 1), b(1, 1);
    a << 1;
    b << 4;
    const CouplingBounds cb = coupling_bounds(zero_mean(a), zero_mean(b));
    CHECK(cb.min_cost == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cb.max_cost == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(cb.optimal_map.mat()(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("min cost equals squared distance") {
    std::mt19937_64 rng(15);
    for (int it = 0; it < 20; ++it) {
      const GaussParam a(rand_vec(rng, 3), rand_spd(rng, 3));
      const GaussParam b(rand_vec(rng, 3), rand_spd(rng, 3));
      const double w = wasserstein_distance(a, b);
      const CouplingBounds cb = coupling_bounds(a, b);
      CHECK(std::abs(cb.min_cost - w * w) <= 1e-10 * (1 + w * w));
      CHECK(cb.min_cost <= cb.max_cost);
      const Matrix res = cb.optimal_map.mat() * a.cov.mat() *
                             cb.optimal_map.mat() -
                         b.cov.mat();
      CHECK(res.norm() <= 1e-9 * b.cov.mat().norm());
    }
  }
}

TEST_CASE("fisher_inner") {
  std::mt19937_64 rng(16);
  const SymMat u = rand_sym(rng, 3), v = rand_sym(rng, 3);
  CHECK(fisher_inner(SpdMat::Identity(3), u, v) ==
        doctest::Approx(0.5 * (u.mat() * v.mat()).trace()).epsilon(1e-12));

  Matrix c(1, 1), one(1, 1);
  c << 2;
  one << 1;
  CHECK(fisher_inner(SpdMat(c), SymMat(one), SymMat(one)) ==
        doctest::Approx(0.125).epsilon(1e-12));

  for (int it = 0; it < 10; ++it) {
    const SpdMat cc = rand_spd(rng, 3);
    const SymMat uu = rand_sym(rng, 3);
    CHECK(fisher_inner(cc, uu, uu) > 0.0);
  }
}

TEST_CASE("expansion_check") {
  const SpdMat i3 = SpdMat::Identity(3);
  SUBCASE("theta = 0") {
    const ExpansionCheck e = expansion_check(i3, SymMat::Identity(3), 0.0);
    CHECK(e.lhs == 0.0);
    CHECK(e.rhs == 0.0);
  }
  SUBCASE("scalar expansion at the identity") {
    // W^2(I, (1+t)I) = n (sqrt(1+t) - 1)^2, rhs = n t^2 / 4.
    const double theta = 0.01;
    const ExpansionCheck e = expansion_check(i3, SymMat::Identity(3), theta);
    const double want_lhs = 3.0 * std::pow(std::sqrt(1 + theta) - 1.0, 2);
    CHECK(e.lhs == doctest::Approx(want_lhs).epsilon(1e-8));
    CHECK(e.rhs == doctest::Approx(3.0 * theta * theta / 4.0).epsilon(1e-12));
  }
  SUBCASE("ratio approaches one") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 10; ++it) {
      const SpdMat s = rand_spd(rng, 3);
      const SymMat h = rand_sym(rng, 3);
      for (double theta : {1e-2, 1e-3, 1e-4}) {
        const ExpansionCheck e = expansion_check(s, h, theta);
        CHECK(std::abs(e.lhs / e.rhs - 1.0) <= 10.0 * theta);
      }
    }
  }
}
