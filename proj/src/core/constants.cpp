#include "constants.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "error.hpp"

namespace tfas {

namespace {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Rational rat_pow(const Rational& base, uint32_t e) {
  Rational acc = 1;
  for (uint32_t i = 0; i < e; ++i) acc *= base;
  return acc;
}

BigInt int_pow(uint32_t base, uint32_t e) {
  BigInt acc = 1;
  for (uint32_t i = 0; i < e; ++i) acc *= base;
  return acc;
}

bool d_satisfies(uint32_t d, uint32_t k) {
  const Rational mu(1, 18);
  const Rational pow2d = Rational(1, BigInt(1) << d);
  for (uint32_t r = 1; r <= k; ++r) {
    const Rational inv_d_2r1(1, int_pow(d, 2 * r - 1));  // d^(1-2r)
    const Rational inv_d_2r2(1, int_pow(d, 2 * r - 2));  // d^(2-2r)
    const Rational lhs1 = (mu - inv_d_2r1) / (d * r + 1);
    const Rational rhs1 =
        rat_pow(Rational((BigInt(1) << r) - 1, BigInt(1) << r), d);
    if (!(lhs1 > rhs1)) return false;
    const Rational lhs2 = (inv_d_2r2 - inv_d_2r1) / (d + 1);
    if (!(lhs2 > pow2d)) return false;
  }
  return true;
}

uint64_t ceil_div(uint64_t a, uint64_t b) { return (a + b - 1) / b; }

}  // namespace

uint32_t smallest_d(uint32_t k) {
  require(k >= 2, ErrorKind::parameter, "need k >= 2");
  // The left sides decay polynomially in d and the right sides exponentially,
  // so the scan terminates; the cap only guards against a logic bug.
  for (uint32_t d = 1; d <= 100000; ++d) {
    if (d_satisfies(d, k)) return d;
  }
  fail(ErrorKind::resource, "no admissible d below 100000");
}

double Constants::friendly_vertex_threshold() const { return n / 17.0; }

double Constants::friendly_clique_threshold(uint32_t r_prime) const {
  double base = n / std::pow(2.0, double(r_prime) + 1.0);
  return mode == Mode::practical ? clique_scale * base : base;
}

double Constants::friendly_h1_edge_threshold() const {
  double v = n / (double(d) * double(d));
  return mode == Mode::practical ? std::max(1.0, v) : v;
}

double Constants::friendly_hr_edge_threshold(uint32_t r) const {
  double v = n / std::pow(double(d), 2.0 * r);
  return mode == Mode::practical ? std::max(1.0, v) : v;
}

double Constants::extendable_common_threshold(uint32_t r) const {
  double v = n / std::pow(double(d), 2.0 * r - 2.0);
  return mode == Mode::practical ? std::max(1.0, v) : v;
}

double Constants::absorber_extension_threshold() const {
  if (mode == Mode::practical) {
    return std::max(1.0, std::ceil(absorber_fraction * double(m)));
  }
  return delta * rho * n / 4.0;
}

nlohmann::json Constants::to_json() const {
  nlohmann::json thresholds;
  thresholds["friendly_vertex"] = friendly_vertex_threshold();
  for (uint32_t rp = 1; rp <= k; ++rp) {
    thresholds["friendly_clique_r" + std::to_string(rp)] =
        friendly_clique_threshold(rp);
  }
  thresholds["friendly_edge_h1"] = friendly_h1_edge_threshold();
  for (uint32_t r = 2; r < k; ++r) {
    thresholds["friendly_edge_h" + std::to_string(r)] =
        friendly_hr_edge_threshold(r);
  }
  for (uint32_t r = 2; r <= k; ++r) {
    thresholds["extendable_common_r" + std::to_string(r)] =
        extendable_common_threshold(r);
  }
  thresholds["absorber_extension"] = absorber_extension_threshold();
  return nlohmann::json{
      {"mode", mode == Mode::practical ? "practical" : "theoretical"},
      {"k", k},
      {"n", n},
      {"mu", {{"num", mu_num}, {"den", mu_den}}},
      {"rho", rho},
      {"d", d},
      {"delta", delta},
      {"epsilon", epsilon},
      {"m", m},
      {"thresholds", thresholds}};
}

Constants theoretical_constants(uint32_t k, uint32_t n) {
  require(k >= 2, ErrorKind::parameter, "need k >= 2");
  require(n >= 1, ErrorKind::parameter, "need n >= 1");
  Constants c;
  c.mode = Constants::Mode::theoretical;
  c.k = k;
  c.n = n;
  c.d = smallest_d(k);

  // rho = 0.25 mu^k 2^-C(k,2), delta = min(rho/k^2, 1/(2k d^(2k))),
  // eps = delta rho / 5, m = ceil(delta n); all exact until the final cast.
  const Rational mu(1, 18);
  const Rational rho =
      Rational(1, 4) * rat_pow(mu, k) / Rational(BigInt(1) << (k * (k - 1) / 2));
  const Rational delta_a = rho / (k * k);
  const Rational delta_b(1, 2 * k * int_pow(c.d, 2 * k));
  const Rational delta = std::min(delta_a, delta_b);
  const Rational eps = delta * rho / 5;
  c.rho = rho.convert_to<double>();
  c.delta = delta.convert_to<double>();
  c.epsilon = eps.convert_to<double>();
  const Rational mn = delta * n;
  BigInt m_big = numerator(mn) / denominator(mn);
  if (m_big * denominator(mn) != numerator(mn)) ++m_big;
  c.m = m_big.convert_to<uint32_t>();
  return c;
}

Constants practical_constants(uint32_t k, uint32_t n,
                              const std::map<std::string, double>& overrides) {
  require(k >= 2, ErrorKind::parameter, "need k >= 2");
  require(n >= 1, ErrorKind::parameter, "need n >= 1");
  Constants c;
  c.mode = Constants::Mode::practical;
  c.k = k;
  c.n = n;
  c.d = 4;
  double delta = 0.05;
  c.absorber_fraction = 0.02;
  c.clique_scale = 0.5;

  for (const auto& [key, value] : overrides) {
    require(value > 0, ErrorKind::parameter,
            "override " + key + " must be positive");
    if (key == "mu") {
      // Store the override as a reduced fraction at nano precision.
      int64_t den = 1000000000;
      int64_t num = static_cast<int64_t>(std::llround(value * double(den)));
      require(num > 0, ErrorKind::parameter, "override mu too small");
      int64_t g = std::gcd(num, den);
      c.mu_num = num / g;
      c.mu_den = den / g;
    } else if (key == "d") {
      c.d = static_cast<uint32_t>(value);
      require(c.d >= 2, ErrorKind::parameter, "override d must be >= 2");
    } else if (key == "delta") {
      delta = value;
    } else if (key == "absorber_fraction") {
      c.absorber_fraction = value;
    } else if (key == "clique_scale") {
      c.clique_scale = value;
    } else {
      fail(ErrorKind::parameter, "unknown constants override: " + key);
    }
  }

  c.delta = delta;
  c.m = static_cast<uint32_t>(std::ceil(delta * double(n)));
  // rho/epsilon keep their defining shape so threshold formulas stay
  // comparable with theoretical mode.
  c.rho = 0.25 * std::pow(c.mu(), double(k)) *
          std::pow(2.0, -double(k) * (k - 1) / 2.0);
  c.epsilon = c.delta * c.rho / 5.0;
  return c;
}

Constants make_constants(Constants::Mode mode, uint32_t k, uint32_t n,
                         const std::map<std::string, double>& overrides) {
  if (mode == Constants::Mode::practical) {
    return practical_constants(k, n, overrides);
  }
  require(overrides.empty(), ErrorKind::parameter,
          "theoretical constants accept no overrides");
  return theoretical_constants(k, n);
}

}  // namespace tfas
