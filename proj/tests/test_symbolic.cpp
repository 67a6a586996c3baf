#include <doctest.h>

#include <cmath>
#include <numbers>

#include "siegel/error.hpp"
#include "siegel/special.hpp"
#include "siegel/symbolic.hpp"

using namespace siegel;
using SV = SymbolicVolume;

TEST_CASE("rationals factor into primes") {
  const SV x = SV::rational(mpq_class(12, 35));
  CHECK(x.pow2() == 2);
  CHECK(x.pow3() == 1);
  CHECK(x.prime_exponent(5) == -1);
  CHECK(x.prime_exponent(7) == -1);
  CHECK(x.coeff() == mpq_class(1, 35));
  CHECK(x.value() == doctest::Approx(12.0 / 35.0));
  CHECK_THROWS_AS(SV::rational(0), Error);
  CHECK_THROWS_AS(SV::rational(-3), Error);
}

TEST_CASE("products and quotients add exponents") {
  SV x = SV::prime_power(2, mpq_class(3, 2)) * SV::pi_power(1);
  CHECK(x.to_string() == "2^(3/2) * pi");
  x /= SV::prime_power(2, mpq_class(3, 2));
  CHECK(x == SV::pi_power(1));
  CHECK((x / x) == SV::one());
  CHECK((SV::integer(6) / SV::integer(6)).to_string() == "1");
}

TEST_CASE("Gamma and factorial identities are recognized") {
  CHECK(SV::gamma_half(2) == SV::one());
  CHECK(SV::gamma_half(6) == SV::integer(2));
  CHECK(SV::gamma_half(1) == SV::pi_power(mpq_class(1, 2)));
  // Gamma(5/2) = 3 sqrt(pi) / 4
  CHECK(SV::gamma_half(5) == SV::rational(mpq_class(3, 4)) * SV::pi_power(mpq_class(1, 2)));
  CHECK(SV::factorial(10) == SV::integer(3628800));
  CHECK(SV::factorial(5, 2) / SV::factorial(4, 2) == SV::integer(25));
  CHECK(SV::gamma_half(7).value() == doctest::Approx(std::tgamma(3.5)));
}

TEST_CASE("zeta values stay symbolic") {
  const SV z = SV::zeta_value(2) * SV::zeta_value(3);
  CHECK(z.to_string() == "zeta(2) * zeta(3)");
  CHECK(z.value() == doctest::Approx(zeta(2) * zeta(3)));
  CHECK(!(SV::zeta_value(2) == SV::pi_power(2) / SV::integer(6)));
}

TEST_CASE("rational powers") {
  const SV x = SV::integer(12).pow(mpq_class(1, 2));
  CHECK(x.pow2() == 1);
  CHECK(x.pow3() == mpq_class(1, 2));
  CHECK(x.value() == doctest::Approx(std::sqrt(12.0)));
  CHECK_THROWS_AS(SV::zeta_value(2).pow(mpq_class(1, 2)), Error);
  CHECK(SV::zeta_value(2, 2).pow(mpq_class(1, 2)) == SV::zeta_value(2));
}

TEST_CASE("huge exponents stay exact and log_value stays finite") {
  const SV x = SV::prime_power(2, mpq_class("123456789012345678901/4")) /
               SV::prime_power(3, mpq_class("10000000000"));
  CHECK(std::isfinite(x.log_value()));
  const double expect = 123456789012345678901.0 / 4 * std::log(2.0) - 1e10 * std::log(3.0);
  CHECK(x.log_value() == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("symbols carry a numeric value") {
  const SV t = SV::symbol("t", 1.3, 2);
  CHECK(t.value() == doctest::Approx(1.69));
  CHECK((t / SV::symbol("t", 1.3, 2)) == SV::one());
  CHECK(t.to_string() == "t^2");
}

TEST_CASE("rendering") {
  CHECK(SV::prime_power(2, mpq_class(1, 2)).to_string() == "sqrt(2)");
  CHECK((SV::zeta_value(2) / (SV::prime_power(2, mpq_class(1, 2)) * SV::pi_power(1)))
            .to_string() == "zeta(2) / (sqrt(2) * pi)");
  CHECK(SV::gamma_half(3).to_string() == "Gamma(3/2)");
  CHECK(SV::factorial(3, 2).to_string() == "(3!)^2");
}
