#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "vsacap/oracle.hpp"

using namespace vsacap;

namespace {

double binom(unsigned n, unsigned k) {
  double r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("agreement probability small cases") {
    CHECK(agreement_probability(1) == 1.0);
    CHECK(agreement_probability(2) == 0.75);
    CHECK(agreement_probability(3) == 0.75);
    CHECK(agreement_probability(4) == 0.6875);
  }

  TEST_CASE("agreement probability matches the central binomial term") {
    for (unsigned n = 2; n <= 24; ++n) {
      const unsigned k = n % 2 ? (n - 1) / 2 : n / 2;
      const double closed = 0.5 + binom(n - 1, k) / std::ldexp(1.0, static_cast<int>(n));
      CAPTURE(n);
      CHECK(agreement_probability(n) == doctest::Approx(closed).epsilon(1e-14));
    }
  }

  TEST_CASE("enumeration refuses oversized instances") {
    CHECK_THROWS_AS(agreement_probability(40), std::length_error);
    CHECK_THROWS_AS(agreement_probability(0), std::invalid_argument);
  }

  TEST_CASE("depth agreement halves the bias per fold") {
    for (unsigned r = 1; r <= 10; ++r) {
      CAPTURE(r);
      CHECK(depth_agreement_probability(r) == doctest::Approx(0.5 + std::ldexp(1.0, -static_cast<int>(r))));
    }
  }

  TEST_CASE("oracle_check dispatch") {
    const nlohmann::json x = {{"d", 10}, {"entries", {{1, 2}, {3, 1}}}};
    const nlohmann::json y = {{"d", 10}, {"entries", {{1, 1}, {4, 5}}}};
    CHECK(oracle_check("mapi", "intersection", {{"x", x}, {"y", y}}) == 2.0);
    CHECK(oracle_check("cbloom", "wedgedot", {{"x", x}, {"y", y}}) == 1.0);
    CHECK(oracle_check("cbloom", "l1", {{"x", x}, {"y", y}}) == 7.0);
    CHECK(oracle_check("mapi", "norm", {{"x", x}}) == 5.0);
    CHECK(oracle_check("mapb", "member", {{"x", x}, {"j", 3}}) == 1.0);
    CHECK(oracle_check("mapb", "agreement", {{"n", 3}}) == 0.75);
    CHECK(oracle_check("mapb", "depth-agreement", {{"r", 3}}) == 0.625);
    CHECK_THROWS_AS(oracle_check("mapb", "nope", {}), std::invalid_argument);
  }
}
