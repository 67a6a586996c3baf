#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "siegel/error.hpp"
#include "siegel/haar.hpp"
#include "siegel/iwasawa.hpp"

using namespace siegel;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("identity decomposes trivially") {
  for (int n = 2; n <= 6; ++n) {
    const auto f = decompose(SquareMatrix::identity(n));
    CHECK(max_abs_diff(f.k, SquareMatrix::identity(n)) == 0.0);
    CHECK(max_abs_diff(f.u, SquareMatrix::identity(n)) == 0.0);
    for (double a : f.a) CHECK(a == 1.0);
    for (double b : f.b) CHECK(b == 1.0);
  }
}

TEST_CASE("a rotation is its own K-factor") {
  const auto g = SquareMatrix::from_rows({{0, -1}, {1, 0}});
  const auto f = decompose(g);
  CHECK(max_abs_diff(f.k, g) <= 1e-15);
  CHECK(f.a[0] == doctest::Approx(1.0));
  CHECK(f.a[1] == doctest::Approx(1.0));
  CHECK(std::abs(f.u(0, 1)) <= 1e-15);
}

TEST_CASE("recompose of diagonal factors") {
  IwasawaFactors f{SquareMatrix::identity(2), {2.0, 0.5}, SquareMatrix::identity(2), {4.0}};
  CHECK(recompose(f) == SquareMatrix::from_rows({{2, 0}, {0, 0.5}}));
  IwasawaFactors id{SquareMatrix::identity(3), {1, 1, 1}, SquareMatrix::identity(3), {1, 1}};
  CHECK(recompose(id) == SquareMatrix::identity(3));
}

TEST_CASE("round trip and factor invariants on seeded random matrices") {
  for (int n = 2; n <= 8; ++n) {
    RngStream rng(100 + n, 0);
    for (int rep = 0; rep < 500; ++rep) {
      const SquareMatrix g = sample_gaussian_sl(n, rng);
      const auto f = decompose(g);
      REQUIRE(max_abs_diff(recompose(f), g) <= 1e-10);
      CHECK(orthogonality_defect(f.k) <= 1e-10);
      CHECK(std::abs(f.k.determinant() - 1.0) <= 1e-9);
      double prod = 1.0;
      for (double a : f.a) {
        CHECK(a > 0.0);
        prod *= a;
      }
      CHECK(std::abs(prod - 1.0) <= 1e-9);
      for (int i = 0; i < n; ++i) {
        CHECK(f.u(i, i) == 1.0);
        for (int j = 0; j < i; ++j) CHECK(f.u(i, j) == 0.0);
      }
      const auto back = diagonal_from_ratios(f.b);
      for (int i = 0; i < n; ++i) CHECK(std::abs(back[i] / f.a[i] - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("decomposition recovers known factors") {
  RngStream rng(11, 0);
  for (int n = 2; n <= 6; ++n)
    for (int rep = 0; rep < 50; ++rep) {
      const SquareMatrix k = sample_haar_so(n, rng);
      std::vector<double> b(n - 1);
      for (double& x : b) x = std::exp(rng.uniform(-1.0, 1.0));
      const auto a = diagonal_from_ratios(b);
      std::vector<double> coeffs(n * (n - 1) / 2);
      for (double& c : coeffs) c = rng.uniform(-2.0, 2.0);
      const SquareMatrix u = unit_upper(n, coeffs);
      const auto f = decompose(recompose(IwasawaFactors{k, a, u, b}));
      CHECK(max_abs_diff(f.k, k) <= 1e-10);
      CHECK(max_abs_diff(f.u, u) <= 1e-10);
      for (int i = 0; i < n; ++i) CHECK(std::abs(f.a[i] - a[i]) <= 1e-10);
    }
}

TEST_CASE("Q factor agrees with Eigen's Householder QR up to column signs") {
  RngStream rng(12, 0);
  const SquareMatrix g = sample_gaussian_sl(5, rng);
  Eigen::MatrixXd e(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) e(i, j) = g(i, j);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(e);
  const Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  const auto f = decompose(g);
  for (int j = 0; j < 5; ++j) {
    const double sign = r(j, j) < 0 ? -1.0 : 1.0;
    CHECK(std::abs(f.a[j] - std::abs(r(j, j))) <= 1e-12);
    for (int i = 0; i < 5; ++i) CHECK(std::abs(f.k(i, j) - sign * q(i, j)) <= 1e-12);
  }
}

TEST_CASE("degenerate inputs are rejected") {
  CHECK(kind_of([] { decompose(SquareMatrix::from_rows({{0, 1}, {1, 0}})); }) ==
        ErrorKind::NotUnimodular);
  CHECK(kind_of([] { decompose(SquareMatrix::from_rows({{2, 0}, {0, 2}})); }) ==
        ErrorKind::NotUnimodular);
  CHECK(kind_of([] { decompose(SquareMatrix::from_rows({{1, 1}, {1, 1}})); }) ==
        ErrorKind::NonInvertible);
  CHECK(kind_of([] { decompose(SquareMatrix::from_rows({{1e7, 0}, {0, 1e-7}})); }) ==
        ErrorKind::NonInvertible);
}

TEST_CASE("Siegel membership examples") {
  const SiegelParams p = SiegelParams::minimal();
  CHECK(p.t == doctest::Approx(2.0 / std::sqrt(3.0)));
  CHECK(siegel_membership(SquareMatrix::from_rows({{2, 0}, {0, 0.5}}), p, 1e-9) ==
        Membership::outside);
  const double c[] = {0.4};
  CHECK(siegel_membership(unit_upper(2, c), p, 1e-9) == Membership::inside);
  const double edge[] = {p.t, 1.0};
  const SquareMatrix g = SquareMatrix::diagonal(diagonal_from_ratios(edge));
  CHECK(siegel_membership(g, p, 1e-9) == Membership::boundary);
  const double shear[] = {0.5};
  CHECK(siegel_membership(unit_upper(2, shear), p, 1e-9) == Membership::boundary);
  CHECK_THROWS_AS(siegel_membership(g, SiegelParams{0.0, 0.5}, 1e-9), Error);
}

TEST_CASE("row convention mirrors the column convention") {
  RngStream rng(13, 0);
  const SiegelParams p = SiegelParams::minimal();
  for (int n = 2; n <= 5; ++n)
    for (int rep = 0; rep < 200; ++rep) {
      const SquareMatrix g = sample_gaussian_sl(n, rng);
      const auto rf = decompose_rows(g);
      CHECK(max_abs_diff(recompose(rf), g) <= 1e-10);
      CHECK(orthogonality_defect(rf.kappa) <= 1e-10);
      const auto cf = decompose(antitranspose(g));
      // beta reverses a; nu is the antitranspose of u.
      for (int i = 0; i < n; ++i) CHECK(std::abs(rf.beta[i] - cf.a[n - 1 - i]) <= 1e-10);
      CHECK(max_abs_diff(rf.nu, antitranspose(cf.u)) <= 1e-10);
      CHECK(row_siegel_membership(rf, p, 1e-9) == siegel_membership(cf, p, 1e-9));
    }
}

TEST_CASE("antitranspose is an anti-automorphism") {
  RngStream rng(14, 0);
  const SquareMatrix a = sample_gaussian_sl(4, rng), b = sample_gaussian_sl(4, rng);
  CHECK(max_abs_diff(antitranspose(a * b), antitranspose(b) * antitranspose(a)) <= 1e-12);
  CHECK(max_abs_diff(antitranspose(antitranspose(a)), a) == 0.0);
  const auto g = IntMatrix::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}});
  CHECK(antitranspose(g) == IntMatrix::from_rows({{10, 6, 3}, {8, 5, 2}, {7, 4, 1}}));
}
