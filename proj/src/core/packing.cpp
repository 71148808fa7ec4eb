#include "packing.hpp"

#include <algorithm>
#include <queue>

namespace tfas {

MatchingResult hopcroft_karp(uint32_t nl, uint32_t nr,
                             const std::vector<std::vector<uint32_t>>& adj) {
  require(adj.size() == nl, ErrorKind::parameter, "adjacency size mismatch");
  constexpr uint32_t kInf = UINT32_MAX;
  MatchingResult m;
  m.left_match.assign(nl, -1);
  m.right_match.assign(nr, -1);
  std::vector<uint32_t> dist(nl, kInf);

  auto bfs = [&]() {
    std::queue<uint32_t> q;
    bool reachable_free = false;
    for (uint32_t u = 0; u < nl; ++u) {
      if (m.left_match[u] < 0) {
        dist[u] = 0;
        q.push(u);
      } else {
        dist[u] = kInf;
      }
    }
    while (!q.empty()) {
      uint32_t u = q.front();
      q.pop();
      for (uint32_t v : adj[u]) {
        int32_t w = m.right_match[v];
        if (w < 0) {
          reachable_free = true;
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          q.push(static_cast<uint32_t>(w));
        }
      }
    }
    return reachable_free;
  };

  std::function<bool(uint32_t)> dfs = [&](uint32_t u) {
    for (uint32_t v : adj[u]) {
      int32_t w = m.right_match[v];
      if (w < 0 || (dist[w] == dist[u] + 1 && dfs(static_cast<uint32_t>(w)))) {
        m.left_match[u] = static_cast<int32_t>(v);
        m.right_match[v] = static_cast<int32_t>(u);
        return true;
      }
    }
    dist[u] = kInf;
    return false;
  };

  while (bfs()) {
    for (uint32_t u = 0; u < nl; ++u) {
      if (m.left_match[u] < 0 && dfs(u)) ++m.size;
    }
  }
  return m;
}

MatchingResult bipartite_max_matching(
    uint32_t nl, uint32_t nr,
    const std::function<bool(uint32_t, uint32_t)>& adjacent) {
  std::vector<std::vector<uint32_t>> adj(nl);
  for (uint32_t u = 0; u < nl; ++u) {
    for (uint32_t v = 0; v < nr; ++v) {
      if (adjacent(u, v)) adj[u].push_back(v);
    }
  }
  return hopcroft_karp(nl, nr, adj);
}

bool matching_is_maximum(uint32_t nl, uint32_t nr,
                         const std::vector<std::vector<uint32_t>>& adj,
                         const MatchingResult& m) {
  // Alternating BFS from free left vertices; an augmenting path exists iff a
  // free right vertex is reachable.
  std::vector<bool> seen_l(nl, false), seen_r(nr, false);
  std::queue<uint32_t> q;
  for (uint32_t u = 0; u < nl; ++u) {
    if (m.left_match[u] < 0) {
      seen_l[u] = true;
      q.push(u);
    }
  }
  while (!q.empty()) {
    uint32_t u = q.front();
    q.pop();
    for (uint32_t v : adj[u]) {
      if (seen_r[v]) continue;
      seen_r[v] = true;
      int32_t w = m.right_match[v];
      if (w < 0) return false;
      if (!seen_l[w]) {
        seen_l[w] = true;
        q.push(static_cast<uint32_t>(w));
      }
    }
  }
  return true;
}

std::vector<uint32_t> hall_violator(uint32_t nl,
                                    const std::vector<std::vector<uint32_t>>& adj,
                                    const MatchingResult& m) {
  std::vector<bool> seen_l(nl, false);
  std::vector<bool> seen_r(m.right_match.size(), false);
  std::queue<uint32_t> q;
  for (uint32_t u = 0; u < nl; ++u) {
    if (m.left_match[u] < 0) {
      seen_l[u] = true;
      q.push(u);
    }
  }
  while (!q.empty()) {
    uint32_t u = q.front();
    q.pop();
    for (uint32_t v : adj[u]) {
      if (seen_r[v]) continue;
      seen_r[v] = true;
      int32_t w = m.right_match[v];
      if (w >= 0 && !seen_l[w]) {
        seen_l[w] = true;
        q.push(static_cast<uint32_t>(w));
      }
    }
  }
  std::vector<uint32_t> r;
  for (uint32_t u = 0; u < nl; ++u) {
    if (seen_l[u]) r.push_back(u);
  }
  return r;
}

nlohmann::json HallReport::to_json() const {
  return nlohmann::json{{"stage", stage},
                        {"r", r},
                        {"left_vertices", left_vertices},
                        {"left_tuples", left_tuples},
                        {"neighborhood", neighborhood},
                        {"left_size",
                         stage == "h1" ? left_vertices.size() : left_tuples.size()},
                        {"neighborhood_size", neighborhood.size()}};
}

nlohmann::json PackingResult::to_json() const {
  nlohmann::json j{{"status", success() ? "success" : "stage_failure"},
                   {"cliques", cliques},
                   {"clique_count", cliques.size()},
                   {"trace", trace}};
  if (!success()) {
    j["stage"] = stage;
    j["diagnostic"] = diagnostic;
    if (hall) j["hall_violator"] = hall->to_json();
  }
  return j;
}

FilterStats friendly_h1_filter(const LeftGraph& left,
                               const std::vector<uint32_t>& b1,
                               const std::vector<uint32_t>& b2,
                               const std::vector<Bitset>& b_masks,
                               const Constants& c) {
  FilterStats out;
  const double threshold = c.friendly_h1_edge_threshold();
  for (uint32_t u : b1) {
    for (uint32_t v : b2) {
      if (!left.adjacent(u, v)) continue;
      ++out.total;
      bool keep = true;
      for (uint32_t t = 2; t < left.parts() && keep; ++t) {
        Bitset common = left.row(u);
        common &= left.row(v);
        common &= b_masks[t];
        keep = double(common.count()) >= threshold;
      }
      if (keep) {
        out.kept.emplace_back(u, v);
      } else {
        ++out.removed;
      }
    }
  }
  return out;
}

HrFilterStats friendly_hr_filter(const LeftGraph& left,
                                 const std::vector<RTuple>& j_tuples,
                                 const std::vector<uint32_t>& b_next,
                                 const std::vector<Bitset>& b_masks,
                                 const Constants& c, uint32_t r) {
  HrFilterStats out;
  const uint32_t k = left.parts();
  const double threshold = c.friendly_hr_edge_threshold(r);
  Bitset next_mask(left.vertices());
  for (uint32_t v : b_next) next_mask.set(v);

  for (uint32_t i = 0; i < j_tuples.size(); ++i) {
    const RTuple& p = j_tuples[i];
    Bitset base(left.vertices());
    base.set();
    for (uint32_t u : p) base &= left.row(u);
    Bitset candidates = base;
    candidates &= next_mask;
    for (auto v = candidates.find_first(); v != Bitset::npos;
         v = candidates.find_next(v)) {
      ++out.total;
      bool keep = true;
      if (r + 1 < k) {  // stage k-1 has nothing left to protect
        for (uint32_t t = r + 1; t < k && keep; ++t) {
          Bitset common = base;
          common &= left.row(static_cast<uint32_t>(v));
          common &= b_masks[t];
          keep = double(common.count()) >= threshold;
        }
      }
      if (keep) {
        out.kept.emplace_back(i, static_cast<uint32_t>(v));
      } else {
        ++out.removed;
      }
    }
  }
  return out;
}

PackingPipeline::PackingPipeline(const Tournament& t, const VertexOrder& order,
                                 const Constants& c)
    : t_(t), c_(c), left_(t, order) {
  require(c.k == t.parts(), ErrorKind::parameter,
          "constants built for k=" + std::to_string(c.k) + ", tournament has " +
              std::to_string(t.parts()) + " parts");
  const auto& sizes = t.layout().sizes();
  const bool equal_parts =
      std::all_of(sizes.begin(), sizes.end(),
                  [&](uint32_t s) { return s == sizes[0]; });
  require(equal_parts && c.n == sizes[0], ErrorKind::parameter,
          "pipeline needs equal part sizes matching the constants' n");
  trace_ = nlohmann::json::object();
}

void PackingPipeline::select_canonical_a_star() {
  use_a_star(select_a_star(left_, c_));
  trace_["a_star_mode"] = "canonical";
}

void PackingPipeline::select_random_a_star(Rng& rng) {
  use_a_star(select_a_star_random(left_, c_, rng));
  trace_["a_star_mode"] = "random";
}

void PackingPipeline::use_a_star(std::vector<std::vector<uint32_t>> a_star) {
  const uint32_t k = left_.parts();
  require(a_star.size() == k, ErrorKind::parameter,
          "core needs one vertex list per part");
  const uint32_t need = c_.n - k + 1;
  a_star_masks_.assign(k, Bitset(left_.vertices()));
  for (uint32_t p = 0; p < k; ++p) {
    require(static_cast<uint32_t>(a_star[p].size()) == need,
            ErrorKind::parameter, "core part " + std::to_string(p) +
                                      " must hold exactly n-k+1 vertices");
    for (uint32_t v : a_star[p]) {
      require(left_.layout().part_of(v) == p, ErrorKind::parameter,
              "core vertex in wrong part");
      a_star_masks_[p].set(v);
    }
  }
  a_star_ = std::move(a_star);
  a_star_set_ = true;
  trace_["a_star"] = a_star_;
}

void PackingPipeline::require_a_star() const {
  require(a_star_set_, ErrorKind::parameter, "core not selected yet");
}

void PackingPipeline::require_absorber() const {
  require(absorber_set_, ErrorKind::parameter, "absorber not built yet");
}

AbsorberBuildResult PackingPipeline::build_absorber_stage(Rng& rng,
                                                          uint32_t retries) {
  require_a_star();
  AbsorberBuildResult res = build_absorber(left_, a_star_, c_, rng, retries);
  use_absorber(res.absorber);
  trace_["absorber_attempts"] = res.attempts;
  trace_["absorption_ok"] = res.absorption_ok;
  trace_["absorption_violations"] = res.violations.size();
  return res;
}

void PackingPipeline::use_absorber(Absorber absorber) {
  require_a_star();
  const uint32_t k = left_.parts();
  absorber_ = std::move(absorber);
  absorber_.a_star = a_star_;
  absorber_set_ = true;
  trace_["absorber"] = absorber_.to_json();

  const Bitset used = absorber_.used_vertices(left_.vertices());
  b_sets_.assign(k, {});
  b_masks_.assign(k, Bitset(left_.vertices()));
  for (uint32_t p = 0; p < k; ++p) {
    for (uint32_t v : a_star_[p]) {
      if (!used.test(v)) {
        b_sets_[p].push_back(v);
        b_masks_[p].set(v);
      }
    }
  }
  // Size bookkeeping: |B_p| = n-k+1 - m * max(0, k - max(2, p+1)) and the two
  // first slices agree.
  const uint32_t m = absorber_.level_size();
  for (uint32_t p = 0; p < k; ++p) {
    const uint32_t levels_hit = k >= std::max(2u, p + 1) + 1
                                    ? k - 1 - std::max(2u, p + 1) + 1
                                    : 0;
    const uint64_t expect = uint64_t(c_.n) - k + 1 - uint64_t(m) * levels_hit;
    require(b_sets_[p].size() == expect, ErrorKind::structural,
            "core slice bookkeeping broken in part " + std::to_string(p));
  }
  require(b_sets_[0].size() == b_sets_[1].size(), ErrorKind::structural,
          "first two core slices must agree in size");
}

std::vector<uint32_t> PackingPipeline::b_vertices(uint32_t part) const {
  require_absorber();
  require(part < b_sets_.size(), ErrorKind::parameter, "part out of range");
  return b_sets_[part];
}

StageGraph PackingPipeline::stage_graph(uint32_t r) const {
  require_absorber();
  const uint32_t k = left_.parts();
  require(r >= 1 && r < k, ErrorKind::parameter, "stage index out of range");
  StageGraph sg;
  sg.r = r;

  if (r == 1) {
    sg.left_vertices = b_sets_[0];
    sg.right_vertices = b_sets_[1];
    auto fs = friendly_h1_filter(left_, b_sets_[0], b_sets_[1], b_masks_, c_);
    sg.unfiltered_edges = fs.total;
    sg.removed_edges = fs.removed;
    std::vector<uint32_t> lpos(left_.vertices(), UINT32_MAX),
        rpos(left_.vertices(), UINT32_MAX);
    for (uint32_t i = 0; i < sg.left_vertices.size(); ++i) {
      lpos[sg.left_vertices[i]] = i;
    }
    for (uint32_t i = 0; i < sg.right_vertices.size(); ++i) {
      rpos[sg.right_vertices[i]] = i;
    }
    sg.adj.assign(sg.left_vertices.size(), {});
    for (auto [u, v] : fs.kept) sg.adj[lpos[u]].push_back(rpos[v]);
    return sg;
  }

  require(set_valid_ && set_.r == r, ErrorKind::parameter,
          "stage " + std::to_string(r) + " needs the perfect " +
              std::to_string(r) + "-set first");
  const Bitset higher = absorber_.used_vertices(left_.vertices(), r + 1);
  for (uint32_t idx : set_.star) {
    const RTuple& p = set_.tuples[idx];
    bool clean = true;
    for (uint32_t v : p) {
      if (higher.test(v)) {
        clean = false;
        break;
      }
    }
    if (clean) sg.left_tuples.push_back(p);
  }
  sg.right_vertices = b_sets_[r];
  auto fs =
      friendly_hr_filter(left_, sg.left_tuples, b_sets_[r], b_masks_, c_, r);
  sg.unfiltered_edges = fs.total;
  sg.removed_edges = fs.removed;
  std::vector<uint32_t> rpos(left_.vertices(), UINT32_MAX);
  for (uint32_t i = 0; i < sg.right_vertices.size(); ++i) {
    rpos[sg.right_vertices[i]] = i;
  }
  sg.adj.assign(sg.left_tuples.size(), {});
  for (auto [i, v] : fs.kept) sg.adj[i].push_back(rpos[v]);
  return sg;
}

void PackingPipeline::verify_extendable(const PerfectRSet& s) const {
  const uint32_t k = left_.parts();
  const double threshold = c_.extendable_common_threshold(s.r);
  for (uint32_t idx : s.star) {
    const RTuple& p = s.tuples[idx];
    for (uint32_t t = s.r; t < k; ++t) {
      Bitset common = left_.common_neighborhood(p, left_.part_mask(t));
      if (double(common.count()) < threshold) {
        throw StageFailure(
            "extendability_r" + std::to_string(s.r),
            "tuple starting at vertex " + std::to_string(p[0]) +
                " keeps only " + std::to_string(common.count()) +
                " common neighbors in part " + std::to_string(t) +
                ", threshold " + std::to_string(threshold));
      }
    }
  }
}

namespace {

HallReport make_hall_report(const StageGraph& sg,
                            const std::vector<uint32_t>& violator) {
  HallReport h;
  h.stage = "h" + std::to_string(sg.r);
  h.r = sg.r;
  Bitset nb;  // right indices
  nb.resize(sg.right_vertices.size());
  for (uint32_t li : violator) {
    if (sg.r == 1) {
      h.left_vertices.push_back(sg.left_vertices[li]);
    } else {
      h.left_tuples.push_back(sg.left_tuples[li]);
    }
    for (uint32_t ri : sg.adj[li]) nb.set(ri);
  }
  for (auto i = nb.find_first(); i != Bitset::npos; i = nb.find_next(i)) {
    h.neighborhood.push_back(sg.right_vertices[i]);
  }
  return h;
}

std::vector<uint32_t> leftover_vertices(const PartLayout& layout, uint32_t part,
                                        const std::vector<uint32_t>& core) {
  std::vector<uint32_t> all = layout.part_vertices(part);
  std::vector<uint32_t> out;
  std::set_difference(all.begin(), all.end(), core.begin(), core.end(),
                      std::back_inserter(out));
  return out;
}

}  // namespace

void PackingPipeline::build_p2_stage(bool verify_extendability) {
  require_absorber();
  const uint32_t k = left_.parts();
  StageGraph sg = stage_graph(1);
  trace_["h1"] = {{"left", sg.left_vertices.size()},
                  {"right", sg.right_vertices.size()},
                  {"edges", sg.unfiltered_edges},
                  {"removed_by_filter", sg.removed_edges}};

  MatchingResult m = hopcroft_karp(
      static_cast<uint32_t>(sg.left_vertices.size()),
      static_cast<uint32_t>(sg.right_vertices.size()), sg.adj);
  trace_["h1"]["matching"] = m.size;
  if (m.size < sg.left_vertices.size()) {
    auto violator = hall_violator(
        static_cast<uint32_t>(sg.left_vertices.size()), sg.adj, m);
    throw StageFailure(
        "h1",
        "no perfect matching in the filtered first-stage graph: matched " +
            std::to_string(m.size) + " of " +
            std::to_string(sg.left_vertices.size()),
        make_hall_report(sg, violator));
  }

  PerfectRSet s;
  s.r = 2;
  for (uint32_t i = 0; i < sg.left_vertices.size(); ++i) {
    s.star.push_back(static_cast<uint32_t>(s.tuples.size()));
    s.tuples.push_back(
        {sg.left_vertices[i],
         sg.right_vertices[static_cast<uint32_t>(m.left_match[i])]});
  }
  for (const auto& [lvl, tuples] : absorber_.levels) {
    for (const RTuple& q : tuples) {
      s.star.push_back(static_cast<uint32_t>(s.tuples.size()));
      s.tuples.push_back({q[0], q[1]});
    }
  }
  auto left0 = leftover_vertices(left_.layout(), 0, a_star_[0]);
  auto left1 = leftover_vertices(left_.layout(), 1, a_star_[1]);
  require(left0.size() == k - 1 && left1.size() == k - 1,
          ErrorKind::structural, "leftover pairing bookkeeping broken");
  for (uint32_t i = 0; i < left0.size(); ++i) {
    s.tuples.push_back({left0[i], left1[i]});
  }
  require(s.tuples.size() == c_.n, ErrorKind::structural,
          "perfect 2-set must hold exactly n tuples");
  require(s.star.size() == c_.n - k + 1, ErrorKind::structural,
          "perfect 2-set star subset must hold n-k+1 tuples");

  set_ = std::move(s);
  set_valid_ = true;
  if (verify_extendability) verify_extendable(set_);
}

void PackingPipeline::extend_stage(bool verify_extendability) {
  require(set_valid_, ErrorKind::parameter, "no perfect set to extend");
  const uint32_t k = left_.parts();
  const uint32_t r = set_.r;
  require(r < k, ErrorKind::parameter, "perfect set already complete");

  StageGraph sg = stage_graph(r);
  const std::string stage_name = "h" + std::to_string(r);
  trace_[stage_name] = {{"left", sg.left_tuples.size()},
                        {"right", sg.right_vertices.size()},
                        {"edges", sg.unfiltered_edges},
                        {"removed_by_filter", sg.removed_edges}};
  require(sg.left_tuples.size() == sg.right_vertices.size(),
          ErrorKind::structural, "stage side bookkeeping broken");

  MatchingResult m =
      hopcroft_karp(static_cast<uint32_t>(sg.left_tuples.size()),
                    static_cast<uint32_t>(sg.right_vertices.size()), sg.adj);
  trace_[stage_name]["matching"] = m.size;
  if (m.size < sg.left_tuples.size()) {
    auto violator =
        hall_violator(static_cast<uint32_t>(sg.left_tuples.size()), sg.adj, m);
    throw StageFailure(stage_name,
                       "no perfect matching in filtered stage " + stage_name +
                           ": matched " + std::to_string(m.size) + " of " +
                           std::to_string(sg.left_tuples.size()),
                       make_hall_report(sg, violator));
  }

  // Locate star tuples by their first coordinate; tuples are disjoint.
  std::vector<uint32_t> tuple_at(left_.vertices(), UINT32_MAX);
  for (uint32_t idx : set_.star) tuple_at[set_.tuples[idx][0]] = idx;

  PerfectRSet s;
  s.r = r + 1;
  for (uint32_t i = 0; i < sg.left_tuples.size(); ++i) {
    RTuple ext = sg.left_tuples[i];
    ext.push_back(sg.right_vertices[static_cast<uint32_t>(m.left_match[i])]);
    s.star.push_back(static_cast<uint32_t>(s.tuples.size()));
    s.tuples.push_back(std::move(ext));
  }
  for (const auto& [lvl, tuples] : absorber_.levels) {
    if (lvl < r + 1) continue;
    for (const RTuple& q : tuples) {
      const uint32_t idx = tuple_at[q[0]];
      require(idx != UINT32_MAX, ErrorKind::structural,
              "absorber prefix missing from star subset");
      RTuple ext = set_.tuples[idx];
      require(std::equal(ext.begin(), ext.end(), q.begin()),
              ErrorKind::structural, "absorber prefix diverged from star tuple");
      ext.push_back(q[r]);
      s.star.push_back(static_cast<uint32_t>(s.tuples.size()));
      s.tuples.push_back(std::move(ext));
    }
  }
  // Inert tuples: pair the k-1 non-star rows with the k-1 vertices outside
  // the part-r core, ascending.
  auto leftovers = leftover_vertices(left_.layout(), r, a_star_[r]);
  std::vector<uint32_t> nonstar;
  {
    std::vector<bool> is_star(set_.tuples.size(), false);
    for (uint32_t idx : set_.star) is_star[idx] = true;
    for (uint32_t idx = 0; idx < set_.tuples.size(); ++idx) {
      if (!is_star[idx]) nonstar.push_back(idx);
    }
  }
  require(leftovers.size() == k - 1 && nonstar.size() == k - 1,
          ErrorKind::structural, "inert pairing bookkeeping broken");
  for (uint32_t i = 0; i < nonstar.size(); ++i) {
    RTuple ext = set_.tuples[nonstar[i]];
    ext.push_back(leftovers[i]);
    s.tuples.push_back(std::move(ext));
  }
  require(s.tuples.size() == c_.n, ErrorKind::structural,
          "perfect set must hold exactly n tuples");

  set_ = std::move(s);
  if (verify_extendability && set_.r < k) verify_extendable(set_);
}

const PerfectRSet& PackingPipeline::perfect_set() const {
  require(set_valid_, ErrorKind::parameter, "no perfect set built yet");
  return set_;
}

std::vector<RTuple> PackingPipeline::cliques() const {
  require(set_valid_ && set_.r == left_.parts(), ErrorKind::parameter,
          "pipeline has not reached a perfect k-set");
  std::vector<RTuple> out;
  out.reserve(set_.star.size());
  for (uint32_t idx : set_.star) out.push_back(set_.tuples[idx]);
  return out;
}

bool verify_packing(const LeftGraph& left, const std::vector<RTuple>& cliques) {
  Bitset used(left.vertices());
  for (const RTuple& p : cliques) {
    if (p.size() != left.parts()) return false;
    for (uint32_t i = 0; i < p.size(); ++i) {
      if (!left.layout().valid_vertex(p[i])) return false;
      if (left.layout().part_of(p[i]) != i) return false;
      if (used.test(p[i])) return false;
      used.set(p[i]);
    }
    for (uint32_t i = 0; i < p.size(); ++i) {
      for (uint32_t j = i + 1; j < p.size(); ++j) {
        if (!left.adjacent(p[i], p[j])) return false;
      }
    }
  }
  return true;
}

PackingResult find_clique_packing(const Tournament& t, const VertexOrder& order,
                                  const Constants& c, uint64_t seed,
                                  uint32_t retries, bool verify_extendability) {
  const uint32_t k = t.parts();
  require(k >= 2, ErrorKind::parameter, "need k >= 2");
  if (k >= 3) {
    require(c.n > k * (uint64_t(c.m) + 1), ErrorKind::parameter,
            "n must exceed k(m+1) so every core slice stays nonempty");
  }

  PackingResult last;
  last.status = PackingResult::Status::stage_failure;
  for (uint32_t attempt = 0; attempt <= retries; ++attempt) {
    Rng rng(mix_seed(seed, attempt, 0xA850Full));
    PackingPipeline pipe(t, order, c);
    pipe.trace()["attempt"] = attempt;
    std::string phase = "a_star";
    try {
      if (attempt == 0) {
        pipe.select_canonical_a_star();
      } else {
        pipe.select_random_a_star(rng);
      }
      phase = "absorber";
      pipe.build_absorber_stage(rng, 0);
      phase = "matching";
      pipe.build_p2_stage(verify_extendability);
      while (pipe.current_r() < k) pipe.extend_stage(verify_extendability);

      PackingResult res;
      res.status = PackingResult::Status::success;
      res.cliques = pipe.cliques();
      res.trace = pipe.trace();
      res.trace["attempts_used"] = attempt + 1;
      require(verify_packing(pipe.left(), res.cliques), ErrorKind::structural,
              "internal error: emitted packing failed verification");
      require(res.cliques.size() == c.n - k + 1, ErrorKind::structural,
              "internal error: wrong packing size");
      return res;
    } catch (const StageFailure& f) {
      last = PackingResult{};
      last.status = PackingResult::Status::stage_failure;
      last.stage = f.stage();
      last.diagnostic = f.diagnostic();
      last.hall = f.hall();
      last.trace = pipe.trace();
      last.trace["attempts_used"] = attempt + 1;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::structural) throw;
      last = PackingResult{};
      last.status = PackingResult::Status::stage_failure;
      last.stage = phase;
      last.diagnostic = e.what();
      last.trace = pipe.trace();
      last.trace["attempts_used"] = attempt + 1;
    }
  }
  return last;
}

bool verify_hall_report(const Tournament& t, const VertexOrder& order,
                        const Constants& c,
                        const std::vector<std::vector<uint32_t>>& a_star,
                        const Absorber& absorber, const HallReport& report) {
  try {
    PackingPipeline pipe(t, order, c);
    pipe.use_a_star(a_star);
    pipe.use_absorber(absorber);
    if (report.r >= 2) {
      pipe.build_p2_stage(false);
      while (pipe.current_r() < report.r) pipe.extend_stage(false);
    }
    StageGraph sg = pipe.stage_graph(report.r);

    std::vector<uint32_t> indices;
    if (report.r == 1) {
      std::vector<uint32_t> pos(t.vertices(), UINT32_MAX);
      for (uint32_t i = 0; i < sg.left_vertices.size(); ++i) {
        pos[sg.left_vertices[i]] = i;
      }
      for (uint32_t v : report.left_vertices) {
        if (!t.layout().valid_vertex(v) || pos[v] == UINT32_MAX) return false;
        indices.push_back(pos[v]);
      }
    } else {
      std::vector<uint32_t> pos(t.vertices(), UINT32_MAX);
      for (uint32_t i = 0; i < sg.left_tuples.size(); ++i) {
        pos[sg.left_tuples[i][0]] = i;
      }
      for (const RTuple& p : report.left_tuples) {
        if (p.empty() || !t.layout().valid_vertex(p[0])) return false;
        const uint32_t i = pos[p[0]];
        if (i == UINT32_MAX || sg.left_tuples[i] != p) return false;
        indices.push_back(i);
      }
    }
    std::sort(indices.begin(), indices.end());
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
      return false;
    }
    Bitset nb(sg.right_vertices.size());
    for (uint32_t i : indices) {
      for (uint32_t j : sg.adj[i]) nb.set(j);
    }
    return nb.count() < indices.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace tfas
