#include "oracle.hpp"

#include <algorithm>
#include <set>

namespace tfas {

namespace {

// All transversal cliques through `v0` over currently free vertices, invoking
// `emit` for each.
void cliques_through(const LeftGraph& left, const std::vector<bool>& taken,
                     RTuple& prefix, uint32_t depth,
                     const std::function<void(const RTuple&)>& emit) {
  if (depth == left.parts()) {
    emit(prefix);
    return;
  }
  for (uint32_t v : left.layout().part_vertices(depth)) {
    if (taken[v]) continue;
    bool ok = true;
    for (uint32_t u : prefix) {
      if (!left.adjacent(u, v)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    prefix.push_back(v);
    cliques_through(left, taken, prefix, depth + 1, emit);
    prefix.pop_back();
  }
}

struct PackSearch {
  const LeftGraph& left;
  std::vector<bool> taken;
  std::vector<uint32_t> free_per_part;
  std::vector<RTuple> current;
  std::vector<RTuple> best;

  explicit PackSearch(const LeftGraph& l) : left(l) {
    taken.assign(l.vertices(), false);
    free_per_part = l.layout().sizes();
  }

  uint32_t upper_bound() const {
    uint32_t ub = free_per_part[0];
    for (uint32_t c : free_per_part) ub = std::min(ub, c);
    return static_cast<uint32_t>(current.size()) + ub;
  }

  void take(const RTuple& c) {
    for (uint32_t i = 0; i < c.size(); ++i) {
      taken[c[i]] = true;
      --free_per_part[i];
    }
    current.push_back(c);
  }

  void untake(const RTuple& c) {
    for (uint32_t i = 0; i < c.size(); ++i) {
      taken[c[i]] = false;
      ++free_per_part[i];
    }
    current.pop_back();
  }

  // Branch on the lowest-id free vertex of part 0: either it joins some
  // clique or it is skipped for good.
  void rec(uint32_t from) {
    if (upper_bound() <= best.size()) return;
    uint32_t v0 = UINT32_MAX;
    for (uint32_t v = from; v < left.layout().size(0); ++v) {
      if (!taken[left.layout().offset(0) + v]) {
        v0 = v;
        break;
      }
    }
    if (v0 == UINT32_MAX) {
      if (current.size() > best.size()) best = current;
      return;
    }
    const uint32_t vid = left.layout().offset(0) + v0;
    RTuple prefix{vid};
    taken[vid] = true;  // reserve while enumerating
    std::vector<RTuple> options;
    cliques_through(left, taken, prefix, 1,
                    [&](const RTuple& c) { options.push_back(c); });
    taken[vid] = false;
    for (const RTuple& c : options) {
      take(c);
      rec(v0 + 1);
      untake(c);
    }
    // Skip v0: it appears in no clique of the packing.
    taken[vid] = true;
    --free_per_part[0];
    rec(v0 + 1);
    ++free_per_part[0];
    taken[vid] = false;
  }

  void seed_greedy() {
    for (uint32_t v = 0; v < left.layout().size(0); ++v) {
      const uint32_t vid = left.layout().offset(0) + v;
      if (taken[vid]) continue;
      RTuple prefix{vid};
      RTuple found;
      taken[vid] = true;
      cliques_through(left, taken, prefix, 1, [&](const RTuple& c) {
        if (found.empty()) found = c;
      });
      taken[vid] = false;
      if (!found.empty()) take(found);
    }
    best = current;
    while (!current.empty()) untake(current.back());
  }
};

}  // namespace

ExactPacking max_transversal_packing(const LeftGraph& left,
                                     const OracleBudget& budget) {
  ExactPacking out;
  const uint32_t k = left.parts();

  if (k == 2 && !budget.force_branch_and_bound) {
    const auto a = left.layout().part_vertices(0);
    const auto b = left.layout().part_vertices(1);
    std::vector<std::vector<uint32_t>> adj(a.size());
    for (uint32_t i = 0; i < a.size(); ++i) {
      for (uint32_t j = 0; j < b.size(); ++j) {
        if (left.adjacent(a[i], b[j])) adj[i].push_back(j);
      }
    }
    MatchingResult m = hopcroft_karp(static_cast<uint32_t>(a.size()),
                                     static_cast<uint32_t>(b.size()), adj);
    out.size = m.size;
    for (uint32_t i = 0; i < a.size(); ++i) {
      if (m.left_match[i] >= 0) {
        out.witness.push_back({a[i], b[static_cast<uint32_t>(m.left_match[i])]});
      }
    }
    return out;
  }

  for (uint32_t s : left.layout().sizes()) {
    require(s <= budget.max_part_size_exact, ErrorKind::resource,
            "exact packing limited to parts of size " +
                std::to_string(budget.max_part_size_exact) + " for k >= 3");
  }
  PackSearch search(left);
  search.seed_greedy();
  search.rec(0);
  out.size = static_cast<uint32_t>(search.best.size());
  out.witness = std::move(search.best);
  return out;
}

FkResult brute_force_fk_witness(const Tournament& t,
                                const OracleBudget& budget) {
  const uint32_t v = t.vertices();
  require(v <= budget.max_vertices_orders, ErrorKind::resource,
          "order enumeration limited to " +
              std::to_string(budget.max_vertices_orders) + " vertices");
  const auto pairs = t.cross_pairs();
  require(pairs.size() <= 32, ErrorKind::resource, "too many cross pairs");

  std::vector<uint32_t> perm(v);
  for (uint32_t i = 0; i < v; ++i) perm[i] = i;
  std::set<uint32_t> seen_masks;
  FkResult best;
  best.fk = UINT32_MAX;
  do {
    std::vector<uint32_t> pos(v);
    for (uint32_t p = 0; p < v; ++p) pos[perm[p]] = p;
    uint32_t mask = 0;
    for (uint32_t e = 0; e < pairs.size(); ++e) {
      auto [i, j] = pairs[e];
      // Left-to-right edge between i and j under this order?
      const bool lr = t.has_edge(i, j) ? pos[i] < pos[j] : pos[j] < pos[i];
      if (lr) mask |= (1u << e);
    }
    if (!seen_masks.insert(mask).second) continue;
    VertexOrder order = VertexOrder::from_sequence(perm);
    ExactPacking packed = max_transversal_packing(left_graph(t, order), budget);
    if (packed.size < best.fk) {
      best.fk = packed.size;
      best.argmin_order = order;
      best.packing = std::move(packed.witness);
    }
    if (best.fk == 0) break;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

uint32_t brute_force_fk(const Tournament& t, const OracleBudget& budget) {
  return brute_force_fk_witness(t, budget).fk;
}

uint64_t enumeration_size(const std::vector<uint32_t>& part_sizes) {
  PartLayout layout(part_sizes);
  uint64_t total = static_cast<uint64_t>(layout.vertices()) *
                   (layout.vertices() - 1) / 2;
  for (uint32_t s : part_sizes) total -= static_cast<uint64_t>(s) * (s - 1) / 2;
  require(total <= 24, ErrorKind::resource,
          "exhaustive enumeration limited to 24 cross pairs, got " +
              std::to_string(total));
  return 1ull << total;
}

Tournament tournament_from_mask(const std::vector<uint32_t>& part_sizes,
                                uint64_t mask) {
  const uint64_t space = enumeration_size(part_sizes);
  require(mask < space, ErrorKind::parameter, "orientation mask out of range");
  PartLayout layout(part_sizes);
  uint64_t total = static_cast<uint64_t>(layout.vertices()) *
                   (layout.vertices() - 1) / 2;
  for (uint32_t s : part_sizes) total -= static_cast<uint64_t>(s) * (s - 1) / 2;
  std::vector<bool> bits(total);
  for (uint64_t b = 0; b < total; ++b) bits[b] = (mask >> b) & 1ull;
  return Tournament::from_pair_bits(part_sizes, bits);
}

}  // namespace tfas
