#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hstiefel/group_action.hpp"
#include "hstiefel/morse.hpp"
#include "hstiefel/qsvd.hpp"
#include "hstiefel/random.hpp"
#include "hstiefel/stiefel.hpp"

using namespace hstiefel;

TEST_CASE("dimension formulas") {
  CHECK(sp_dimension(0) == 0);
  CHECK(sp_dimension(1) == 3);
  CHECK(sp_dimension(2) == 10);
  CHECK(stiefel_dimension(2, 1) == 7);
  CHECK(stiefel_dimension(4, 2) == 26);
  for (int n = 2; n <= 8; ++n)
    for (int k = 1; k < n; ++k)
      CHECK(stiefel_dimension(n, k) == sp_dimension(n) - sp_dimension(n - k));
}

TEST_CASE("point validation and block accessors") {
  QuaternionMatrix bottom(3, 2);
  bottom(1, 0) = Quaternion::real(1.0);
  bottom(2, 1) = Quaternion::real(1.0);
  const StiefelPoint x0 = validate_point(bottom);
  CHECK(x0.n() == 3);
  CHECK(x0.k() == 2);
  CHECK(x0.constraint_residual() <= 1e-15);
  CHECK(x0.t_block().rows() == 1);
  CHECK(x0.p_block().rows() == 2);
  CHECK(approx_equal(x0.p_block(), QuaternionMatrix::identity(2), 0.0));

  // Unnormalized diagonal stack: residual is exactly |2 - 1| = 1.
  const QuaternionMatrix doubled = real_matrix(2, 1, {1.0, 1.0});
  CHECK(StiefelPoint(doubled).constraint_residual() == doctest::Approx(1.0));
  CHECK_THROWS_AS((validate_point(doubled)), std::domain_error);
  CHECK_THROWS_AS((validate_point(QuaternionMatrix(2, 2))), std::invalid_argument);  // k == n out of range

  const double c = 1.0 / std::sqrt(2.0);
  CHECK(validate_point(real_matrix(2, 1, {c, c})).constraint_residual() <=
        1e-15);
}

TEST_CASE("tangent projection fixes tangents and kills the base point") {
  const StiefelPoint x = random_point(4, 2, 201);
  GaussianSource source(202);
  const QuaternionMatrix u = source.matrix(4, 2);

  const TangentVector pu = tangent_project(x, u);
  CHECK(pu.tangency_residual() <= 1e-13);
  // Idempotence.
  CHECK(fro_norm(tangent_project(x, pu.mat()).mat() - pu.mat()) <= 1e-13);
  // Complementarity with the normal part.
  CHECK(fro_norm(pu.mat() + normal_project(x, u) - u) <= 1e-13);
  // The base point itself is purely normal.
  CHECK(fro_norm(tangent_project(x, x.mat()).mat()) <= 1e-13);
  CHECK(fro_norm(normal_project(x, x.mat()) - x.mat()) <= 1e-13);

  CHECK_THROWS_AS((tangent_project(x, QuaternionMatrix(2, 4))), std::invalid_argument);
}

TEST_CASE("normal projection of the extension gradient") {
  // For u = [0; 2P] the normal part is x * (2 P*P).
  const StiefelPoint x = random_point(5, 2, 203);
  const QuaternionMatrix p = x.p_block();
  const QuaternionMatrix u =
      vconcat(QuaternionMatrix(3, 2), p * 2.0);
  const QuaternionMatrix expected = x.mat() * (p.adjoint() * p * 2.0);
  CHECK(fro_norm(normal_project(x, u) - expected) <= 1e-13);
}

TEST_CASE("validate_tangent accepts projections and rejects raw noise") {
  const StiefelPoint x = random_point(3, 1, 204);
  GaussianSource source(205);
  const QuaternionMatrix raw = source.matrix(3, 1);
  CHECK_NOTHROW(validate_tangent(x, tangent_project(x, raw).mat()));
  CHECK_THROWS_AS((validate_tangent(x, x.mat())), std::domain_error);
}

TEST_CASE("random points are deterministic, on-manifold, and shape-checked") {
  const StiefelPoint a = random_point(5, 3, 206);
  const StiefelPoint b = random_point(5, 3, 206);
  CHECK(approx_equal(a.mat(), b.mat(), 0.0));
  CHECK(a.constraint_residual() <= 1e-13);
  const StiefelPoint c = random_point(5, 3, 207);
  CHECK(fro_norm(a.mat() - c.mat()) > 0.1);
  CHECK_THROWS_AS((random_point(1, 1, 208)), std::invalid_argument);
  CHECK_THROWS_AS((random_point(2, 0, 209)), std::invalid_argument);
}

TEST_CASE("random tangents live in the tangent space") {
  const StiefelPoint x = random_point(4, 2, 210);
  const TangentVector v = random_tangent(x, 211);
  CHECK(v.tangency_residual() <= 1e-13);
  const TangentVector w = random_tangent(x, 211);
  CHECK(approx_equal(v.mat(), w.mat(), 0.0));

  // At the bottom-identity point the bottom block is skew-Hermitian.
  QuaternionMatrix bottom(4, 2);
  bottom(2, 0) = Quaternion::real(1.0);
  bottom(3, 1) = Quaternion::real(1.0);
  const StiefelPoint x0 = validate_point(bottom);
  const TangentVector t0 = random_tangent(x0, 212);
  const QuaternionMatrix y = t0.mat().block(2, 0, 2, 2);
  CHECK(fro_norm(y + y.adjoint()) <= 1e-13);
}

TEST_CASE("tangent basis is orthonormal and spans the right dimension") {
  const int cases[][2] = {{2, 1}, {4, 2}, {5, 3}};
  for (const auto& nk : cases) {
    const int n = nk[0], k = nk[1];
    const StiefelPoint x = random_point(n, k, 220 + n + k);
    const std::vector<TangentVector> basis = tangent_basis(x);
    const int d = stiefel_dimension(n, k);
    REQUIRE(static_cast<int>(basis.size()) == d);
    for (const TangentVector& e : basis)
      CHECK(e.tangency_residual() <= 1e-12);
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        const double gram = frobenius_inner(basis[i].mat(), basis[j].mat());
        CHECK(gram == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));
      }
  }
}

TEST_CASE("tangent basis counts for the smallest manifolds") {
  CHECK(tangent_basis(random_point(2, 1, 230)).size() == 7);
  CHECK(tangent_basis(random_point(4, 2, 231)).size() == 26);
}

TEST_CASE("tangent basis through an explicit gauge") {
  const StiefelPoint x = random_point(4, 2, 232);
  GaussianSource gauge(233);
  const QuaternionMatrix a = complete_symplectic_randomized(x.mat(), gauge);
  const std::vector<TangentVector> basis = tangent_basis_in_gauge(x, a);
  REQUIRE(basis.size() == 26);
  for (const TangentVector& e : basis)
    CHECK(e.tangency_residual() <= 1e-12);
  // A non-transport matrix is rejected.
  CHECK_THROWS_AS((tangent_basis_in_gauge(x, QuaternionMatrix::identity(4))), std::domain_error);
}

TEST_CASE("polar retraction") {
  const StiefelPoint x = random_point(4, 2, 240);
  // Fixed point on the manifold.
  CHECK(fro_norm(polar_retract(x.mat()).mat() - x.mat()) <= 1e-12);
  // Positive scaling is quotiented away.
  CHECK(fro_norm(polar_retract(x.mat() * 3.0).mat() - x.mat()) <= 1e-12);
  // Nearby matrices land on the manifold.
  GaussianSource source(241);
  const QuaternionMatrix y = x.mat() + source.matrix(4, 2) * 0.01;
  const StiefelPoint r = polar_retract(y);
  CHECK(r.constraint_residual() <= 1e-12);
  CHECK(fro_norm(r.mat() - x.mat()) <= 0.1);
  // Rank-deficient input has no nearest point.
  QuaternionMatrix flat(3, 2);
  flat(0, 0) = Quaternion::real(1.0);
  CHECK_THROWS_AS((polar_retract(flat)), std::domain_error);
}

TEST_CASE("transport preserves tangency") {
  const StiefelPoint x = random_point(5, 2, 242);
  const TangentVector v = random_tangent(x, 243);
  GaussianSource source(244);
  const QuaternionMatrix u = random_symplectic(5, source);
  const StiefelPoint ux = StiefelPoint(u * x.mat());
  CHECK(ux.constraint_residual() <= 1e-12);
  const TangentVector uv = validate_tangent(ux, u * v.mat(), 1e-11);
  CHECK(uv.tangency_residual() <= 1e-12);
}
