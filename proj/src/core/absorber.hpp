#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "analysis.hpp"

namespace tfas {

// Vertex-disjoint family of m friendly r-cliques per level r = 2..k-1, built
// inside the friendly cores A*_1..A*_k. Level r cliques live in parts 0..r-1
// and exist to hand every vertex of part r enough ready-made extensions.
struct Absorber {
  std::map<uint32_t, std::vector<RTuple>> levels;   // r -> m disjoint tuples
  std::vector<std::vector<uint32_t>> a_star;        // per part, n-k+1 ids

  bool empty() const { return levels.empty(); }
  uint32_t level_size() const {
    return levels.empty() ? 0
                          : static_cast<uint32_t>(levels.begin()->second.size());
  }

  // All vertices used by levels at or above `from_level`.
  Bitset used_vertices(uint32_t universe, uint32_t from_level = 0) const;

  nlohmann::json to_json() const;
  static Absorber from_json(const nlohmann::json& j);
};

// Canonical core: the lowest-id n-k+1 friendly vertices of every part.
// Throws a structural error naming the first part that runs short.
std::vector<std::vector<uint32_t>> select_a_star(const LeftGraph& left,
                                                 const Constants& c);

// Same contract, but draws the n-k+1 vertices uniformly from each part's
// friendly set. Used by pipeline retries.
std::vector<std::vector<uint32_t>> select_a_star_random(const LeftGraph& left,
                                                        const Constants& c,
                                                        Rng& rng);

struct AbsorberBuildResult {
  Absorber absorber;
  uint32_t attempts = 0;
  bool absorption_ok = false;
  // (level r, vertex of part r) pairs whose extension count fell short, for
  // the attempt that was kept.
  std::vector<std::pair<uint32_t, uint32_t>> violations;
};

// Number of level-r cliques that v (a part-r vertex) completes to an
// (r+1)-clique.
uint32_t absorption_degree(const LeftGraph& left, const Absorber& absorber,
                           uint32_t v, uint32_t r);

// Level-by-level randomized construction: enumerate (or sample, past
// `enum_budget`) the friendly r-cliques inside the core that avoid lower
// levels, then keep m pairwise disjoint ones by sequential uniform choice.
// Each full attempt ends with a recount of every extension degree; attempts
// repeat on violations, keeping the best attempt seen. In theoretical mode
// exhausted retries raise a structural error; in practical mode the best
// attempt is returned with its violations listed, since the later matching
// stages verify their own success anyway.
AbsorberBuildResult build_absorber(const LeftGraph& left,
                                   const std::vector<std::vector<uint32_t>>& a_star,
                                   const Constants& c, Rng& rng,
                                   uint32_t max_retries = 20,
                                   uint64_t enum_budget = 10000000ull);

}  // namespace tfas
