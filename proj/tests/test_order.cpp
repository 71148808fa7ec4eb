#include <algorithm>

#include "core/oracle.hpp"
#include "core/order.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace tfas;

namespace {

// Directed 3-cycle on one vertex per part: 0 -> 1 -> 2 -> 0.
Tournament three_cycle() {
  // pairs (0,1),(0,2),(1,2): 0->1 yes, 2->0 so no, 1->2 yes
  return Tournament::from_pair_bits({1, 1, 1}, {true, false, true});
}

}  // namespace

TEST_CASE("left graph of a single edge") {
  Tournament t = test::realize({1, 1}, {{0, 1}});  // 0 -> 1
  LeftGraph fwd(t, VertexOrder::from_sequence({0, 1}));
  CHECK(fwd.adjacent(0, 1));
  LeftGraph back(t, VertexOrder::from_sequence({1, 0}));
  CHECK_FALSE(back.adjacent(0, 1));
  CHECK(back.edge_count() == 0);
}

TEST_CASE("cyclic tournament never has an empty left graph") {
  Tournament t = test::four_cycle();
  std::vector<uint32_t> perm = {0, 1, 2, 3};
  int orders = 0;
  do {
    LeftGraph left(t, VertexOrder::from_sequence(perm));
    CHECK(left.edge_count() >= 1);
    ++orders;
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(orders == 24);
}

TEST_CASE("left edges always form a feedback arc set") {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    Tournament t = Tournament::sample_random(4, 3, 500 + seed);
    Rng rng(seed * 31 + 7);
    VertexOrder pi = VertexOrder::random(t.vertices(), rng);
    LeftGraph left(t, pi);
    CHECK(is_feedback_arc_set(t, left.directed_edges()));
  }
}

TEST_CASE("feedback arc set predicate on the 3-cycle") {
  Tournament t = three_cycle();
  CHECK(is_feedback_arc_set(t, {{0, 1}}));
  CHECK(is_feedback_arc_set(t, {{1, 2}}));
  CHECK_FALSE(is_feedback_arc_set(t, {}));
  CHECK(is_feedback_arc_set(t, {{0, 1}, {1, 2}, {2, 0}}));
  CHECK_THROWS_AS(is_feedback_arc_set(t, {{1, 0}}), Error);  // not an edge
}

TEST_CASE("minimalize against exhaustive subset search") {
  Tournament t = three_cycle();
  std::vector<DirectedEdge> all = {{0, 1}, {1, 2}, {2, 0}};

  // Oracle: enumerate all subsets, find the minimum FAS size.
  uint32_t best = 3;
  for (uint32_t mask = 0; mask < 8; ++mask) {
    std::vector<DirectedEdge> sub;
    for (uint32_t b = 0; b < 3; ++b) {
      if (mask & (1u << b)) sub.push_back(all[b]);
    }
    if (is_feedback_arc_set(t, sub)) {
      best = std::min<uint32_t>(best, static_cast<uint32_t>(sub.size()));
    }
  }
  CHECK(best == 1);

  auto minimal = minimalize_fas(t, all);
  CHECK(minimal.size() == best);
  CHECK(is_feedback_arc_set(t, minimal));
  // Canonical greedy keeps the first edge whose removal is not affordable;
  // dropping (0,1) and (1,2) leaves {(2,0)}, still a FAS.
  CHECK(minimal == std::vector<DirectedEdge>{{2, 0}});
}

TEST_CASE("minimalize: acyclic tournament needs nothing") {
  Tournament t = test::realize({1, 1, 1}, {});  // all edges high->low: acyclic
  std::vector<DirectedEdge> all;
  for (uint32_t u = 0; u < 3; ++u) {
    for (uint32_t v = 0; v < 3; ++v) {
      if (t.has_edge(u, v)) all.emplace_back(u, v);
    }
  }
  CHECK(minimalize_fas(t, all).empty());
}

TEST_CASE("minimalize is a fixed point on minimal inputs") {
  Tournament t = three_cycle();
  auto once = minimalize_fas(t, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(minimalize_fas(t, once) == once);
  CHECK_THROWS_AS(minimalize_fas(t, {}), Error);  // not a FAS
}

TEST_CASE("minimal FAS retains only necessary edges") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Tournament t = Tournament::sample_random(2, 3, 900 + seed);
    Rng rng(seed);
    VertexOrder pi = VertexOrder::random(t.vertices(), rng);
    auto minimal = minimalize_fas(t, LeftGraph(t, pi).directed_edges());
    for (size_t i = 0; i < minimal.size(); ++i) {
      auto without = minimal;
      without.erase(without.begin() + static_cast<ptrdiff_t>(i));
      CHECK_FALSE(is_feedback_arc_set(t, without));
    }
  }
}

TEST_CASE("witness cuts every excluded star and caps the packing") {
  // Exhaustive k=2, n=2: the witness left graph never holds 2 disjoint edges.
  for (uint64_t mask = 0; mask < 16; ++mask) {
    Tournament t = tournament_from_mask({2, 2}, mask);
    WitnessResult w = upper_bound_witness(t);
    CHECK(w.excluded == std::vector<uint32_t>{0});
    LeftGraph left(t, w.order);
    for (uint32_t v : test::realize({2, 2}, {}).layout().part_vertices(1)) {
      CHECK_FALSE(left.adjacent(0, v));
    }
    CHECK(max_transversal_packing(left).size <= 1);
    // The witness FAS misses exactly the star edges at vertex 0.
    CHECK(w.fas.size() == t.cross_pair_count() - 2);
    CHECK(is_feedback_arc_set(t, w.fas));
  }
}

TEST_CASE("witness on sampled k=3 n=2 tournaments") {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    Tournament t = Tournament::sample_random(2, 3, 4000 + seed);
    WitnessResult w = upper_bound_witness(t);
    CHECK(w.excluded.size() == 2);
    LeftGraph left(t, w.order);
    // No left edge from u_i into its companion part, hence no clique through
    // u_i can use that part.
    const auto& layout = t.layout();
    for (uint32_t i = 0; i < 2; ++i) {
      for (uint32_t v : layout.part_vertices(i + 1)) {
        CHECK_FALSE(left.adjacent(w.excluded[i], v));
      }
    }
    CHECK(max_transversal_packing(left).size == 0);  // s - k + 1 = 0
    CHECK(is_feedback_arc_set(t, w.fas));
  }
}

TEST_CASE("witness precondition") {
  Tournament t = Tournament::sample_random(1, 3, 8);  // s = 1 < k-1
  CHECK_THROWS_AS(upper_bound_witness(t), Error);
}

TEST_CASE("orders serialize as plain json arrays") {
  VertexOrder pi = VertexOrder::from_sequence({2, 0, 1});
  auto j = pi.to_json();
  CHECK(j == nlohmann::json({2, 0, 1}));
  CHECK(VertexOrder::from_json(j).position(2) == 0);
  CHECK_THROWS_AS(VertexOrder::from_json(nlohmann::json({0, 0, 1})), Error);
  CHECK_THROWS_AS(VertexOrder::from_json(nlohmann::json({0, 5, 1})), Error);
}

TEST_CASE("order domain mismatch is rejected") {
  Tournament t = Tournament::sample_random(2, 2, 1);
  CHECK_THROWS_AS(LeftGraph(t, VertexOrder::identity(3)), Error);
}

TEST_CASE("right-to-left edges are acyclic under the reversed order") {
  Tournament t = Tournament::sample_random(5, 2, 77);
  Rng rng(3);
  VertexOrder pi = VertexOrder::random(t.vertices(), rng);
  LeftGraph left(t, pi);
  // Complement = tournament minus left edges; must be acyclic.
  CHECK(is_feedback_arc_set(t, left.directed_edges()));
  // And the reversed order is a topological order of the complement: every
  // complement edge points from a later to an earlier position.
  for (uint32_t u = 0; u < t.vertices(); ++u) {
    for (uint32_t v = 0; v < t.vertices(); ++v) {
      if (t.has_edge(u, v) && !left.adjacent(u, v)) {
        CHECK(pi.position(u) > pi.position(v));
      }
    }
  }
}
