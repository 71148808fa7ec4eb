#include "order.hpp"

#include <algorithm>
#include <queue>

namespace tfas {

VertexOrder VertexOrder::identity(uint32_t count) {
  VertexOrder o;
  o.seq_.resize(count);
  o.pos_.resize(count);
  for (uint32_t i = 0; i < count; ++i) o.seq_[i] = o.pos_[i] = i;
  return o;
}

VertexOrder VertexOrder::random(uint32_t count, Rng& rng) {
  auto o = identity(count);
  rng.shuffle(o.seq_);
  for (uint32_t p = 0; p < count; ++p) o.pos_[o.seq_[p]] = p;
  return o;
}

VertexOrder VertexOrder::from_sequence(std::vector<uint32_t> seq) {
  VertexOrder o;
  o.pos_.assign(seq.size(), UINT32_MAX);
  for (uint32_t p = 0; p < seq.size(); ++p) {
    uint32_t v = seq[p];
    require(v < seq.size(), ErrorKind::parameter,
            "order refers to vertex " + std::to_string(v) + " outside 0.." +
                std::to_string(seq.size() - 1));
    require(o.pos_[v] == UINT32_MAX, ErrorKind::parameter,
            "vertex " + std::to_string(v) + " appears twice in order");
    o.pos_[v] = p;
  }
  o.seq_ = std::move(seq);
  return o;
}

VertexOrder VertexOrder::from_json(const nlohmann::json& j) {
  try {
    return from_sequence(j.get<std::vector<uint32_t>>());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse, std::string("bad order json: ") + e.what());
  }
}

LeftGraph::LeftGraph(const Tournament& t, const VertexOrder& order)
    : layout_(t.layout()), order_(order) {
  require(order.size() == t.vertices(), ErrorKind::parameter,
          "order covers " + std::to_string(order.size()) + " vertices, tournament has " +
              std::to_string(t.vertices()));
  const uint32_t n = t.vertices();
  adj_.assign(n, Bitset(n));
  for (uint32_t pos = 0; pos < n; ++pos) {
    const uint32_t u = order.vertex_at(pos);
    // Left-to-right out-edges of u: targets placed after u.
    const Bitset& out = t.out_row(u);
    for (auto v = out.find_first(); v != Bitset::npos; v = out.find_next(v)) {
      if (order.position(static_cast<uint32_t>(v)) > pos) {
        adj_[u].set(v);
        adj_[v].set(u);
      }
    }
  }
}

uint64_t LeftGraph::edge_count() const {
  uint64_t twice = 0;
  for (const auto& row : adj_) twice += row.count();
  return twice / 2;
}

std::vector<DirectedEdge> LeftGraph::directed_edges() const {
  std::vector<DirectedEdge> out;
  for (uint32_t u = 0; u < vertices(); ++u) {
    for (auto v = adj_[u].find_first(); v != Bitset::npos;
         v = adj_[u].find_next(v)) {
      if (order_.position(u) < order_.position(static_cast<uint32_t>(v))) {
        out.emplace_back(u, static_cast<uint32_t>(v));
      }
    }
  }
  return out;
}

Bitset LeftGraph::common_neighborhood(const std::vector<uint32_t>& vs,
                                      const Bitset& mask) const {
  Bitset acc = mask;
  for (uint32_t v : vs) acc &= adj_[v];
  return acc;
}

LeftGraph left_graph(const Tournament& t, const VertexOrder& order) {
  return LeftGraph(t, order);
}

namespace {

// Kahn peeling on the tournament minus a removed-edge matrix.
bool acyclic_without(const Tournament& t, const std::vector<Bitset>& removed) {
  const uint32_t n = t.vertices();
  std::vector<uint32_t> indeg(n, 0);
  for (uint32_t u = 0; u < n; ++u) {
    Bitset kept = t.out_row(u);
    kept -= removed[u];
    for (auto v = kept.find_first(); v != Bitset::npos; v = kept.find_next(v)) {
      ++indeg[v];
    }
  }
  std::vector<uint32_t> stack;
  for (uint32_t v = 0; v < n; ++v) {
    if (indeg[v] == 0) stack.push_back(v);
  }
  uint32_t seen = 0;
  while (!stack.empty()) {
    uint32_t u = stack.back();
    stack.pop_back();
    ++seen;
    Bitset kept = t.out_row(u);
    kept -= removed[u];
    for (auto v = kept.find_first(); v != Bitset::npos; v = kept.find_next(v)) {
      if (--indeg[v] == 0) stack.push_back(static_cast<uint32_t>(v));
    }
  }
  return seen == n;
}

std::vector<Bitset> edge_matrix(const Tournament& t,
                                const std::vector<DirectedEdge>& edges) {
  std::vector<Bitset> m(t.vertices(), Bitset(t.vertices()));
  for (auto [u, v] : edges) {
    require(u < t.vertices() && v < t.vertices(), ErrorKind::parameter,
            "edge endpoint out of range");
    require(t.has_edge(u, v), ErrorKind::parameter,
            "edge (" + std::to_string(u) + "," + std::to_string(v) +
                ") is not in the tournament");
    m[u].set(v);
  }
  return m;
}

}  // namespace

bool is_feedback_arc_set(const Tournament& t,
                         const std::vector<DirectedEdge>& edges) {
  return acyclic_without(t, edge_matrix(t, edges));
}

std::vector<DirectedEdge> minimalize_fas(const Tournament& t,
                                         std::vector<DirectedEdge> edges) {
  auto removed = edge_matrix(t, edges);
  require(acyclic_without(t, removed), ErrorKind::parameter,
          "input edge set is not a feedback arc set");
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::vector<DirectedEdge> out;
  for (auto [u, v] : edges) {
    removed[u].reset(v);  // try returning the edge to the graph
    if (acyclic_without(t, removed)) {
      continue;  // not needed
    }
    removed[u].set(v);
    out.emplace_back(u, v);
  }
  return out;
}

WitnessResult upper_bound_witness(const Tournament& t) {
  const PartLayout& layout = t.layout();
  const uint32_t k = layout.parts();
  const uint32_t s = layout.min_part_size();
  require(s >= k - 1, ErrorKind::parameter,
          "smallest part has " + std::to_string(s) + " vertices, need " +
              std::to_string(k - 1));

  uint32_t small = 0;
  while (layout.size(small) != s) ++small;

  WitnessResult w;
  std::vector<uint32_t> companion;  // parts V_1..V_{k-1}, canonical order
  for (uint32_t p = 0; p < k; ++p) {
    if (p != small) companion.push_back(p);
  }
  for (uint32_t i = 0; i < k - 1; ++i) {
    w.excluded.push_back(layout.offset(small) + i);
  }

  // Order: for each i, the out-neighbors of u_i inside V_i, then u_i, then its
  // in-neighbors inside V_i; all edges between u_i and V_i point right to
  // left. Remaining vertices of the small part close the order.
  std::vector<uint32_t> seq;
  seq.reserve(t.vertices());
  for (uint32_t i = 0; i < k - 1; ++i) {
    const uint32_t u = w.excluded[i];
    const uint32_t p = companion[i];
    for (uint32_t v : layout.part_vertices(p)) {
      if (t.has_edge(u, v)) seq.push_back(v);
    }
    seq.push_back(u);
    for (uint32_t v : layout.part_vertices(p)) {
      if (t.has_edge(v, u)) seq.push_back(v);
    }
  }
  for (uint32_t v : layout.part_vertices(small)) {
    if (v >= layout.offset(small) + (k - 1)) seq.push_back(v);
  }
  w.order = VertexOrder::from_sequence(std::move(seq));

  // Post-hoc audit: under this order, no left edge may join u_i to V_i, so
  // no clique through u_i can use its companion part.
  for (uint32_t i = 0; i < k - 1; ++i) {
    const uint32_t u = w.excluded[i];
    for (uint32_t v : layout.part_vertices(companion[i])) {
      const bool left_to_right = t.has_edge(u, v)
                                     ? w.order.position(u) < w.order.position(v)
                                     : w.order.position(v) < w.order.position(u);
      require(!left_to_right, ErrorKind::structural,
              "witness order failed its star-cut audit");
    }
  }

  // All edges except the excluded stars; the complement is a forest of stars,
  // so this is a feedback arc set.
  std::vector<bool> star(t.vertices(), false);
  for (uint32_t v : w.excluded) star[v] = true;
  std::vector<uint32_t> companion_of(t.vertices(), UINT32_MAX);
  for (uint32_t i = 0; i < k - 1; ++i) {
    companion_of[w.excluded[i]] = companion[i];
  }
  for (uint32_t u = 0; u < t.vertices(); ++u) {
    const Bitset& out = t.out_row(u);
    for (auto v = out.find_first(); v != Bitset::npos; v = out.find_next(v)) {
      const uint32_t vv = static_cast<uint32_t>(v);
      if (star[u] && layout.part_of(vv) == companion_of[u]) continue;
      if (star[vv] && layout.part_of(u) == companion_of[vv]) continue;
      w.fas.emplace_back(u, vv);
    }
  }
  return w;
}

}  // namespace tfas
