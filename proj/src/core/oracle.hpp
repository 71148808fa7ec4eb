#pragma once

#include <cstdint>
#include <vector>

#include "packing.hpp"

namespace tfas {

struct ExactPacking {
  uint32_t size = 0;
  std::vector<RTuple> witness;
};

struct OracleBudget {
  uint32_t max_part_size_exact = 8;  // branch-and-bound cap for k >= 3
  uint32_t max_vertices_orders = 8;  // cap on |V| for the min over all orders
  // Run the branch-and-bound search even at k=2, where maximum matching
  // would do; gives a second, independent route for cross-checks.
  bool force_branch_and_bound = false;
};

// Exact maximum number of pairwise disjoint transversal k-cliques in a left
// graph. k = 2 reduces to maximum matching (any size); k >= 3 runs
// branch-and-bound over transversal cliques with a remaining-part-size bound.
ExactPacking max_transversal_packing(const LeftGraph& left,
                                     const OracleBudget& budget = {});

// Exact f_k: the minimum over all vertex orders of the maximum transversal
// clique packing of the induced left graph. Orders inducing the same left
// graph are deduplicated by edge mask.
uint32_t brute_force_fk(const Tournament& t, const OracleBudget& budget = {});

// Same minimum plus a certificate: the minimizing order and the maximum
// packing of its left graph.
struct FkResult {
  uint32_t fk = 0;
  VertexOrder argmin_order;
  std::vector<RTuple> packing;
};
FkResult brute_force_fk_witness(const Tournament& t,
                                const OracleBudget& budget = {});

// Exhaustive tournament space over a fixed part layout: 2^(cross pairs)
// orientations, lexicographic in the canonical pair order.
uint64_t enumeration_size(const std::vector<uint32_t>& part_sizes);
Tournament tournament_from_mask(const std::vector<uint32_t>& part_sizes,
                                uint64_t mask);

}  // namespace tfas
