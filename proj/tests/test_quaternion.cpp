#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hstiefel/group_action.hpp"
#include "hstiefel/qmatrix.hpp"
#include "hstiefel/random.hpp"
#include "hstiefel/stiefel.hpp"

using namespace hstiefel;

namespace {

const Quaternion qi = Quaternion::unit_i();
const Quaternion qj = Quaternion::unit_j();
const Quaternion qk = Quaternion::unit_k();

}  // namespace

TEST_CASE("hamilton product defining relations") {
  CHECK(approx_equal(qmul(qi, qj), qk, 0.0));
  CHECK(approx_equal(qmul(qj, qi), -qk, 0.0));
  CHECK(approx_equal(qmul(qi, qi), Quaternion::real(-1.0), 0.0));
  CHECK(approx_equal(qmul(qj, qj), Quaternion::real(-1.0), 0.0));
  CHECK(approx_equal(qmul(qk, qk), Quaternion::real(-1.0), 0.0));
  const Quaternion one_plus_i{1.0, 1.0, 0.0, 0.0};
  const Quaternion one_minus_i{1.0, -1.0, 0.0, 0.0};
  CHECK(approx_equal(qmul(one_plus_i, one_minus_i), Quaternion::real(2.0)));
}

TEST_CASE("quaternion norm is multiplicative") {
  GaussianSource source(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Quaternion a = source.next_quaternion();
    const Quaternion b = source.next_quaternion();
    CHECK((a * b).norm() == doctest::Approx(a.norm() * b.norm()).epsilon(1e-12));
  }
}

TEST_CASE("quaternion inverse and conjugation") {
  GaussianSource source(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Quaternion q = source.next_quaternion();
    CHECK(approx_equal(q * inverse(q), Quaternion::real(1.0), 1e-12));
    CHECK(approx_equal(q.conjugate() * q,
                       Quaternion::real(q.norm_sq()), 1e-12));
  }
}

TEST_CASE("matrix product keeps quaternion order") {
  QuaternionMatrix a(1, 1), b(1, 1);
  a(0, 0) = qi;
  b(0, 0) = qj;
  CHECK(approx_equal((a * b)(0, 0), qk, 0.0));
  CHECK(approx_equal((b * a)(0, 0), -qk, 0.0));

  GaussianSource source(13);
  const QuaternionMatrix m = source.matrix(3, 3);
  CHECK(approx_equal(QuaternionMatrix::identity(3) * m, m, 0.0));
  CHECK_THROWS_AS((m * source.matrix(2, 2)), std::invalid_argument);
}

TEST_CASE("adjoint is an involutive antihomomorphism") {
  QuaternionMatrix single(1, 1);
  single(0, 0) = qi;
  CHECK(approx_equal(single.adjoint()(0, 0), -qi, 0.0));
  CHECK(approx_equal(QuaternionMatrix::identity(4).adjoint(),
                     QuaternionMatrix::identity(4), 0.0));

  GaussianSource source(14);
  const QuaternionMatrix a = source.matrix(2, 3);
  const QuaternionMatrix b = source.matrix(3, 2);
  CHECK(approx_equal(a.adjoint().adjoint(), a, 0.0));
  CHECK(approx_equal((a * b).adjoint(), b.adjoint() * a.adjoint(), 1e-13));
}

TEST_CASE("re_trace basics and cyclicity") {
  CHECK(re_trace(QuaternionMatrix::identity(5)) == doctest::Approx(5.0));
  QuaternionMatrix single(1, 1);
  single(0, 0) = qi;
  CHECK(re_trace(single) == doctest::Approx(0.0));
  CHECK_THROWS_AS((re_trace(QuaternionMatrix(2, 3))), std::invalid_argument);

  GaussianSource source(15);
  const QuaternionMatrix a = source.matrix(3, 4);
  const QuaternionMatrix b = source.matrix(4, 3);
  CHECK(re_trace(a * b) == doctest::Approx(re_trace(b * a)).epsilon(1e-12));
}

TEST_CASE("frobenius inner product") {
  const StiefelPoint x = random_point(5, 2, 21);
  CHECK(frobenius_inner(x.mat(), x.mat()) == doctest::Approx(2.0));

  GaussianSource source(16);
  const QuaternionMatrix a = source.matrix(3, 2);
  CHECK(frobenius_inner(a, QuaternionMatrix(3, 2)) == doctest::Approx(0.0));
  CHECK(fro_norm_sq(a) >= 0.0);
  CHECK(fro_norm(QuaternionMatrix(3, 2)) == doctest::Approx(0.0));
  CHECK_THROWS_AS((frobenius_inner(a, QuaternionMatrix(2, 3))), std::invalid_argument);

  // Orthogonality of the complementary projections.
  const QuaternionMatrix u = source.matrix(5, 2);
  CHECK(frobenius_inner(tangent_project(x, u).mat(), normal_project(x, u)) ==
        doctest::Approx(0.0).epsilon(1e-11));
}

TEST_CASE("frobenius inner product is invariant under symplectic sandwich") {
  GaussianSource source(17);
  const QuaternionMatrix a = source.matrix(4, 3);
  const QuaternionMatrix b = source.matrix(4, 3);
  const QuaternionMatrix u = random_symplectic(4, source);
  const QuaternionMatrix v = random_symplectic(3, source);
  CHECK(frobenius_inner(u * a * v, u * b * v) ==
        doctest::Approx(frobenius_inner(a, b)).epsilon(1e-11));
  CHECK(fro_norm(u * a * v) == doctest::Approx(fro_norm(a)).epsilon(1e-11));
}

TEST_CASE("block and concatenation helpers") {
  const QuaternionMatrix m =
      real_matrix(2, 3, {1.0, 2.0, 3.0, 4.0, 5.0, 6.0});
  const QuaternionMatrix sub = m.block(0, 1, 2, 2);
  CHECK(sub(0, 0).w == doctest::Approx(2.0));
  CHECK(sub(1, 1).w == doctest::Approx(6.0));
  CHECK_THROWS_AS((m.block(1, 1, 2, 2)), std::invalid_argument);

  const QuaternionMatrix top = real_matrix(1, 2, {1.0, 2.0});
  const QuaternionMatrix bottom = real_matrix(2, 2, {3.0, 4.0, 5.0, 6.0});
  const QuaternionMatrix stacked = vconcat(top, bottom);
  CHECK(stacked.rows() == 3);
  CHECK(stacked(2, 1).w == doctest::Approx(6.0));

  const QuaternionMatrix d = real_diag(3, 2, {7.0, 8.0});
  CHECK(d(0, 0).w == doctest::Approx(7.0));
  CHECK(d(1, 1).w == doctest::Approx(8.0));
  CHECK(d(2, 0).norm() == doctest::Approx(0.0));
}

TEST_CASE("gaussian source is deterministic and splits into components") {
  GaussianSource a(99);
  GaussianSource b(99);
  for (int i = 0; i < 32; ++i) CHECK(a.next() == b.next());
  GaussianSource c(100);
  const QuaternionMatrix m1 = c.matrix(2, 2);
  GaussianSource d(100);
  const QuaternionMatrix m2 = d.matrix(2, 2);
  CHECK(approx_equal(m1, m2, 0.0));
}
