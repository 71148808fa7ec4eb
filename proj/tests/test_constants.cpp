#include <cmath>

#include "core/constants.hpp"
#include "core/error.hpp"
#include "doctest.h"

using namespace tfas;

namespace {

// Independent check in long double arithmetic. The margins at the critical d
// are ~1e-4 relative, far above long double noise, so this is a legitimate
// second route.
bool satisfies_ld(uint32_t d, uint32_t k) {
  const long double mu = 1.0L / 18.0L;
  for (uint32_t r = 1; r <= k; ++r) {
    const long double lhs1 =
        (mu - std::pow((long double)d, 1.0L - 2.0L * r)) / (d * r + 1.0L);
    const long double rhs1 =
        std::pow(1.0L - std::pow(0.5L, (long double)r), (long double)d);
    if (!(lhs1 > rhs1)) return false;
    const long double lhs2 = (std::pow((long double)d, 2.0L - 2.0L * r) -
                              std::pow((long double)d, 1.0L - 2.0L * r)) /
                             (d + 1.0L);
    if (!(lhs2 > std::pow(0.5L, (long double)d))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("smallest admissible d for k=2 is 24") {
  CHECK(smallest_d(2) == 24);
  CHECK(satisfies_ld(24, 2));
  CHECK_FALSE(satisfies_ld(23, 2));
  // d=23 passes both r=1 inequalities ...
  const long double lhs_r1 = (1.0L / 18.0L - 1.0L / 23.0L) / 24.0L;
  CHECK(lhs_r1 > std::pow(0.5L, 23.0L));
  const long double lhs_r1b = (1.0L - 1.0L / 23.0L) / 24.0L;
  CHECK(lhs_r1b > std::pow(0.5L, 23.0L));
  // ... and the second r=2 inequality ...
  const long double lhs_r2b =
      (std::pow(23.0L, -2.0L) - std::pow(23.0L, -3.0L)) / 24.0L;
  CHECK(lhs_r2b > std::pow(0.5L, 23.0L));
  // ... but violates the first r=2 inequality (mu - d^-3)/(2d+1) > (3/4)^d.
  const long double lhs = (1.0L / 18.0L - std::pow(23.0L, -3.0L)) / 47.0L;
  const long double rhs = std::pow(0.75L, 23.0L);
  CHECK(lhs < rhs);
}

TEST_CASE("smallest admissible d for k=3 sits in the expected window") {
  const uint32_t d3 = smallest_d(3);
  CHECK(d3 >= 55);
  CHECK(d3 <= 70);
  CHECK(satisfies_ld(d3, 3));
  CHECK_FALSE(satisfies_ld(d3 - 1, 3));
}

TEST_CASE("smallest d grows with k") {
  // The constraint family for k+1 contains the family for k.
  CHECK(smallest_d(3) >= smallest_d(2));
  CHECK(smallest_d(4) >= smallest_d(3));
}

TEST_CASE("theoretical constants for k=2") {
  Constants c = theoretical_constants(2, 1000);
  CHECK(c.mu_num == 1);
  CHECK(c.mu_den == 18);
  CHECK(c.d == 24);
  CHECK(c.rho == doctest::Approx(1.0 / 2592.0).epsilon(1e-12));
  // delta = min(rho/4, 1/(4*24^4)) = 1/1327104
  CHECK(c.delta == doctest::Approx(1.0 / 1327104.0).epsilon(1e-12));
  CHECK(c.epsilon == doctest::Approx(c.delta * c.rho / 5.0).epsilon(1e-12));
  CHECK(c.epsilon < c.delta);
  CHECK(c.delta < c.rho);
  CHECK(c.rho < 1.0);
  // m = ceil(delta * n) exactly
  CHECK(c.m == 1);  // 1000/1327104 < 1
}

TEST_CASE("mu stays 1/18 across k") {
  for (uint32_t k = 2; k <= 5; ++k) {
    Constants c = theoretical_constants(k, 100);
    CHECK(c.mu_num == 1);
    CHECK(c.mu_den == 18);
  }
}

TEST_CASE("m is the exact ceiling of delta n") {
  Constants c = theoretical_constants(2, 2000000);
  // delta = 1/1327104; n = 2e6 -> delta n = 1.507...
  CHECK(c.m == 2);
  Constants c2 = theoretical_constants(2, 1327104);
  CHECK(c2.m == 1);
  Constants c3 = theoretical_constants(2, 1327105);
  CHECK(c3.m == 2);
}

TEST_CASE("ordering eps < delta < rho < 1 in theoretical mode") {
  for (uint32_t k = 2; k <= 4; ++k) {
    Constants c = theoretical_constants(k, 500);
    CHECK(c.epsilon < c.delta);
    CHECK(c.delta < c.rho);
    CHECK(c.rho < 1.0);
    CHECK(c.epsilon > 0.0);
  }
}

TEST_CASE("practical defaults") {
  Constants c = practical_constants(3, 120);
  CHECK(c.mode == Constants::Mode::practical);
  CHECK(c.d == 4);
  CHECK(c.m == 6);  // ceil(0.05 * 120)
  CHECK(c.friendly_vertex_threshold() == doctest::Approx(120.0 / 17.0));
  CHECK(c.friendly_clique_threshold(1) == doctest::Approx(0.5 * 120.0 / 4.0));
  CHECK(c.friendly_clique_threshold(2) == doctest::Approx(0.5 * 120.0 / 8.0));
  CHECK(c.friendly_h1_edge_threshold() == doctest::Approx(120.0 / 16.0));
  CHECK(c.friendly_hr_edge_threshold(2) == doctest::Approx(1.0));  // floor
  CHECK(c.absorber_extension_threshold() == doctest::Approx(1.0));
}

TEST_CASE("practical overrides") {
  Constants c = practical_constants(3, 100, {{"delta", 0.1}, {"d", 5.0}});
  CHECK(c.m == 10);
  CHECK(c.d == 5);
  CHECK_THROWS_AS(practical_constants(3, 100, {{"delta", 0.0}}), Error);
  CHECK_THROWS_AS(practical_constants(3, 100, {{"delta", -1.0}}), Error);
  CHECK_THROWS_AS(practical_constants(3, 100, {{"nope", 1.0}}), Error);
}

TEST_CASE("k=2 has no absorber levels regardless of m") {
  Constants c = practical_constants(2, 100);
  CHECK(c.m == 5);
  // The level range 2..k-1 is empty; the absorber module owns that check,
  // here we just pin that thresholds still evaluate.
  CHECK(c.absorber_extension_threshold() >= 1.0);
}

TEST_CASE("constants serialize with a named threshold map") {
  auto j = theoretical_constants(3, 600).to_json();
  CHECK(j["mode"] == "theoretical");
  CHECK(j["thresholds"].contains("friendly_vertex"));
  CHECK(j["thresholds"].contains("friendly_edge_h2"));
  CHECK(j["thresholds"]["friendly_vertex"] == doctest::Approx(600.0 / 17.0));
  CHECK(j["mu"]["den"] == 18);
}
