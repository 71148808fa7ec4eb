#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "constants.hpp"
#include "order.hpp"

namespace tfas {

// In/out pattern against a vertex sequence; true means '+'.
struct Signs {
  std::vector<bool> bits;

  Signs() = default;
  explicit Signs(std::vector<bool> b) : bits(std::move(b)) {}

  size_t size() const { return bits.size(); }
  bool plus(size_t i) const { return bits[i]; }

  static Signs parse(const std::string& s);
  std::string str() const;
};

// One vertex per part, parts 0..r-1 in order.
using RTuple = std::vector<uint32_t>;

// Vertices of `target_part` that are D-consistent with seq: v is an
// out-neighbor of seq[j] where D(j) is '+' and an in-neighbor where it is
// '-'. Vertices sharing a part with some seq[j] drop out automatically.
Bitset consistent_set(const Tournament& t, const std::vector<uint32_t>& seq,
                      const Signs& D, uint32_t target_part);

// W-consistency against an r-tuple uses the opposite edge sense: v is
// W-consistent with p when (v, p[i]) is an edge iff W(i) is '+'.
Bitset w_consistent_set(const Tournament& t, const RTuple& p, const Signs& W,
                        uint32_t target_part);

// Vertices of `target_part` that are W_i-inconsistent with tuple_i for every
// i (fail consistency at >= 1 coordinate each).
Bitset inconsistent_set(const Tournament& t, const std::vector<RTuple>& tuples,
                        const std::vector<Signs>& w_hat, uint32_t target_part);

// Per part: vertices with >= threshold left-graph neighbors in every other
// part.
std::vector<std::vector<uint32_t>> friendly_vertices(const LeftGraph& left,
                                                     double threshold);

// A transversal r-clique is friendly when for every later part t and every
// prefix length r', the first r' vertices have at least
// friendly_clique_threshold(r') common neighbors inside A_t.
bool is_friendly_clique(const LeftGraph& left, const RTuple& clique,
                        const Constants& c);

struct Property1Result {
  uint64_t edges = 0;
  double bound = 0;
  bool pass = false;
  bool meaningful = true;  // both sides reached epsilon*n
};

// Edge count between R (tuples) and S (vertices of part r) in the bipartite
// tuple-vertex graph: (p, v) adjacent iff v is left-adjacent to every
// coordinate of p. Pass when count >= |R||S| / 2^(r+1).
Property1Result check_property1(const LeftGraph& left,
                                const std::vector<RTuple>& r_tuples,
                                const std::vector<uint32_t>& s_vertices,
                                uint32_t r, const Constants& c);

struct Property2Result {
  double count = 0;  // exact count, or extrapolated estimate
  double bound = 0;
  bool pass = false;
  bool estimated = false;
  uint64_t inspected = 0;
};

// Friendly r-clique count with one vertex in each S_i, against the bound
// 0.5 mu^r n^r 2^-C(r,2). Falls back to uniform tuple sampling past
// `budget` inspected tuples when allow_estimate is set.
Property2Result check_property2(const LeftGraph& left,
                                const std::vector<std::vector<uint32_t>>& s_sets,
                                const Constants& c,
                                uint64_t budget = 100000000ull,
                                bool allow_estimate = true,
                                uint64_t sample_size = 200000,
                                uint64_t sample_seed = 1);

struct PropertyCheck {
  uint64_t size = 0;
  double bound = 0;
  bool pass = false;
};

// |inconsistent_set| <= n (1 - 2^-r)^d + n^(2/3).
PropertyCheck check_property3(const Tournament& t,
                              const std::vector<RTuple>& tuples,
                              const std::vector<Signs>& w_hat,
                              uint32_t target_part);

// |consistent_set ∩ A_s| <= n 2^-q + n^(2/3); seq must sit in one part.
PropertyCheck check_property4(const Tournament& t,
                              const std::vector<uint32_t>& seq, const Signs& D,
                              uint32_t s_part);

}  // namespace tfas
