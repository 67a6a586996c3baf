#include <doctest.h>

#include <Eigen/Dense>

#include "siegel/error.hpp"
#include "siegel/matrix.hpp"
#include "siegel/rng.hpp"

using namespace siegel;

TEST_CASE("square matrix construction rejects bad shapes and non-finite entries") {
  CHECK_THROWS_AS(SquareMatrix(1), Error);
  CHECK_THROWS_AS(SquareMatrix(2, {1.0, 2.0, 3.0}), Error);
  CHECK_THROWS_AS(SquareMatrix(2, {1.0, NAN, 0.0, 1.0}), Error);
  CHECK_THROWS_AS(SquareMatrix(2, {1.0, INFINITY, 0.0, 1.0}), Error);
}

TEST_CASE("determinant agrees with Eigen on random matrices") {
  RngStream rng(7, 0);
  for (int n = 2; n <= 6; ++n)
    for (int rep = 0; rep < 20; ++rep) {
      SquareMatrix m(n);
      Eigen::MatrixXd e(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) e(i, j) = m(i, j) = rng.normal();
      CHECK(m.determinant() == doctest::Approx(e.determinant()).epsilon(1e-12));
    }
}

TEST_CASE("product matches Eigen") {
  RngStream rng(8, 0);
  SquareMatrix a(4), b(4);
  Eigen::Matrix4d ea, eb;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      ea(i, j) = a(i, j) = rng.normal();
      eb(i, j) = b(i, j) = rng.normal();
    }
  const SquareMatrix c = a * b;
  const Eigen::Matrix4d ec = ea * eb;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(c(i, j) == doctest::Approx(ec(i, j)).epsilon(1e-14));
}

TEST_CASE("exact integer determinant") {
  CHECK(IntMatrix::from_rows({{2, 1}, {1, 1}}).determinant() == 1);
  CHECK(IntMatrix::from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}).determinant() == -1);
  CHECK(IntMatrix::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}).determinant() == 0);
  // Entries beyond 64 bits: det [[x, x-1], [x+1, x]] = 1 for any x.
  IntMatrix big(2);
  mpz_class x("123456789012345678901234567890");
  big(0, 0) = x;
  big(0, 1) = x - 1;
  big(1, 0) = x + 1;
  big(1, 1) = x;
  CHECK(big.determinant() == 1);
  CHECK_NOTHROW(UnimodularIntMatrix{big});
}

TEST_CASE("unimodular wrapper enforces det = +1 exactly") {
  CHECK_NOTHROW(UnimodularIntMatrix::from_rows({{1, 5}, {0, 1}}));
  CHECK_THROWS_AS(UnimodularIntMatrix::from_rows({{0, 1}, {1, 0}}), Error);
  CHECK_THROWS_AS(UnimodularIntMatrix::from_rows({{2, 0}, {0, 1}}), Error);
  try {
    UnimodularIntMatrix::from_rows({{0, 1}, {1, 0}});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotUnimodular);
  }
  const auto a = UnimodularIntMatrix::from_rows({{1, 1}, {0, 1}});
  const auto b = UnimodularIntMatrix::from_rows({{1, 0}, {1, 1}});
  CHECK((a * b).matrix() == IntMatrix::from_rows({{2, 1}, {1, 1}}));
}

TEST_CASE("integer matrix rendering") {
  CHECK(to_string(IntMatrix::from_rows({{1, -2}, {3, 4}})) == "[[1,-2],[3,4]]");
}
