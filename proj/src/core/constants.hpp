#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "json.hpp"

namespace tfas {

// Smallest d such that for every r in 1..k both
//   (mu - d^(1-2r)) / (dr + 1) > (1 - 2^-r)^d   and
//   (d^(2-2r) - d^(1-2r)) / (d + 1) > 2^-d
// hold, with mu = 1/18. Evaluated in exact rational arithmetic; both sides
// get close near the crossover and doubles can misrank them.
uint32_t smallest_d(uint32_t k);

struct Constants {
  enum class Mode { theoretical, practical };

  Mode mode = Mode::theoretical;
  uint32_t k = 0;
  uint32_t n = 0;

  int64_t mu_num = 1;  // mu kept exact; it feeds clique-count bounds
  int64_t mu_den = 18;
  double rho = 0;
  uint32_t d = 0;
  double delta = 0;
  double epsilon = 0;
  uint32_t m = 0;  // absorber level size

  // Practical-mode knobs (ignored in theoretical mode).
  double absorber_fraction = 0.02;
  double clique_scale = 1.0;

  double mu() const { return double(mu_num) / double(mu_den); }

  // Minimum left-graph degree towards every other part.
  double friendly_vertex_threshold() const;
  // Common-neighborhood floor for the first r' vertices of a clique.
  double friendly_clique_threshold(uint32_t r_prime) const;
  // Edge filters for the gradual matching stage.
  double friendly_h1_edge_threshold() const;
  double friendly_hr_edge_threshold(uint32_t r) const;
  // Common-neighborhood guarantee carried by a perfect r-set.
  double extendable_common_threshold(uint32_t r) const;
  // Required extensions per vertex into the next part.
  double absorber_extension_threshold() const;

  nlohmann::json to_json() const;
};

Constants theoretical_constants(uint32_t k, uint32_t n);

// Desk-scale parameters: the theoretical thresholds only bite for
// astronomically large n. Recognized override keys: mu, d, delta,
// absorber_fraction, clique_scale.
Constants practical_constants(uint32_t k, uint32_t n,
                              const std::map<std::string, double>& overrides = {});

Constants make_constants(Constants::Mode mode, uint32_t k, uint32_t n,
                         const std::map<std::string, double>& overrides = {});

}  // namespace tfas
