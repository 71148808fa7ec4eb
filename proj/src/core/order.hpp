#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tournament.hpp"

namespace tfas {

using DirectedEdge = std::pair<uint32_t, uint32_t>;

// Permutation of the vertex set; position(v) is v's slot, vertex_at(p) its
// inverse.
class VertexOrder {
 public:
  VertexOrder() = default;  // empty; fill via the factories

  static VertexOrder identity(uint32_t count);
  static VertexOrder random(uint32_t count, Rng& rng);
  // Vertices listed left to right. Validates bijectivity.
  static VertexOrder from_sequence(std::vector<uint32_t> seq);

  uint32_t size() const { return static_cast<uint32_t>(seq_.size()); }
  uint32_t position(uint32_t v) const { return pos_[v]; }
  uint32_t vertex_at(uint32_t p) const { return seq_[p]; }
  const std::vector<uint32_t>& sequence() const { return seq_; }

  nlohmann::json to_json() const { return seq_; }
  static VertexOrder from_json(const nlohmann::json& j);

 private:
  std::vector<uint32_t> seq_;
  std::vector<uint32_t> pos_;
};

// The left-to-right edges of a tournament under an order, viewed undirected.
// Removing them from the tournament leaves an acyclic graph, so they form a
// feedback arc set; every minimal feedback arc set arises this way.
class LeftGraph {
 public:
  LeftGraph(const Tournament& t, const VertexOrder& order);

  const PartLayout& layout() const { return layout_; }
  const VertexOrder& order() const { return order_; }
  uint32_t vertices() const { return layout_.vertices(); }
  uint32_t parts() const { return layout_.parts(); }

  bool adjacent(uint32_t u, uint32_t v) const { return adj_[u].test(v); }
  const Bitset& row(uint32_t v) const { return adj_[v]; }
  const Bitset& part_mask(uint32_t p) const { return layout_.mask(p); }

  size_t degree(uint32_t v) const { return adj_[v].count(); }
  size_t degree_in_part(uint32_t v, uint32_t p) const {
    return intersect_count(adj_[v], layout_.mask(p));
  }

  uint64_t edge_count() const;

  // Edges with their tournament orientation (earlier endpoint first).
  std::vector<DirectedEdge> directed_edges() const;

  // Common left-graph neighborhood of a vertex set, restricted to a mask.
  Bitset common_neighborhood(const std::vector<uint32_t>& vs,
                             const Bitset& mask) const;

 private:
  PartLayout layout_;
  VertexOrder order_;
  std::vector<Bitset> adj_;
};

LeftGraph left_graph(const Tournament& t, const VertexOrder& order);

// True iff removing `edges` from t leaves no directed cycle. Every edge must
// exist in t.
bool is_feedback_arc_set(const Tournament& t,
                         const std::vector<DirectedEdge>& edges);

// Greedily drops edges (ascending (source, target) order) while the set stays
// a feedback arc set; the result is minimal.
std::vector<DirectedEdge> minimalize_fas(const Tournament& t,
                                         std::vector<DirectedEdge> edges);

// Deterministic witness for the upper bound on disjoint transversal cliques:
// the first k-1 vertices u_i of the canonically first smallest part are each
// cut off from companion part V_i. Under the returned order no left-graph
// edge joins u_i to V_i, so at most s-k+1 disjoint k-cliques survive in any
// packing of that left graph.
struct WitnessResult {
  VertexOrder order;
  std::vector<uint32_t> excluded;   // u_1..u_{k-1}
  std::vector<DirectedEdge> fas;    // all edges except those between u_i and V_i
};

WitnessResult upper_bound_witness(const Tournament& t);

}  // namespace tfas
