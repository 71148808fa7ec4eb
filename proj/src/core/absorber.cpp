#include "absorber.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace tfas {

Bitset Absorber::used_vertices(uint32_t universe, uint32_t from_level) const {
  Bitset used(universe);
  for (const auto& [r, tuples] : levels) {
    if (r < from_level) continue;
    for (const auto& tuple : tuples) {
      for (uint32_t v : tuple) used.set(v);
    }
  }
  return used;
}

nlohmann::json Absorber::to_json() const {
  nlohmann::json lv = nlohmann::json::object();
  for (const auto& [r, tuples] : levels) lv[std::to_string(r)] = tuples;
  return nlohmann::json{{"levels", lv}, {"a_star", a_star}};
}

Absorber Absorber::from_json(const nlohmann::json& j) {
  try {
    Absorber a;
    a.a_star = j.at("a_star").get<std::vector<std::vector<uint32_t>>>();
    for (const auto& [key, tuples] : j.at("levels").items()) {
      a.levels[static_cast<uint32_t>(std::stoul(key))] =
          tuples.get<std::vector<RTuple>>();
    }
    return a;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse, std::string("bad absorber json: ") + e.what());
  } catch (const std::exception& e) {
    fail(ErrorKind::parse, std::string("bad absorber json: ") + e.what());
  }
}

namespace {

std::vector<std::vector<uint32_t>> pick_a_star(const LeftGraph& left,
                                               const Constants& c, Rng* rng) {
  const uint32_t k = left.parts();
  const uint32_t need = c.n - k + 1;
  auto friendly = friendly_vertices(left, c.friendly_vertex_threshold());
  std::vector<std::vector<uint32_t>> out(k);
  for (uint32_t p = 0; p < k; ++p) {
    if (friendly[p].size() < need) {
      fail(ErrorKind::structural,
           "part " + std::to_string(p) + " has only " +
               std::to_string(friendly[p].size()) + " friendly vertices, need " +
               std::to_string(need));
    }
    if (rng == nullptr) {
      out[p].assign(friendly[p].begin(), friendly[p].begin() + need);
    } else {
      auto idx = rng->sample_distinct(
          static_cast<uint32_t>(friendly[p].size()), need);
      out[p].reserve(need);
      for (uint32_t i : idx) out[p].push_back(friendly[p][i]);
      std::sort(out[p].begin(), out[p].end());
    }
  }
  return out;
}

// Friendly r-cliques inside the core, avoiding `used`. Exhaustive prefix
// search when the tuple space fits the budget, rejection sampling otherwise.
std::vector<RTuple> level_candidates(const LeftGraph& left,
                                     const std::vector<std::vector<uint32_t>>& a_star,
                                     const Bitset& used, uint32_t r,
                                     const Constants& c, uint64_t budget,
                                     Rng& rng) {
  std::vector<std::vector<uint32_t>> avail(r);
  double space = 1;
  for (uint32_t p = 0; p < r; ++p) {
    for (uint32_t v : a_star[p]) {
      if (!used.test(v)) avail[p].push_back(v);
    }
    if (avail[p].empty()) return {};
    space *= double(avail[p].size());
  }

  std::vector<RTuple> out;
  if (space <= double(budget)) {
    RTuple prefix;
    // Depth-first over parts with clique pruning.
    std::function<void(uint32_t)> rec = [&](uint32_t depth) {
      if (depth == r) {
        if (is_friendly_clique(left, prefix, c)) out.push_back(prefix);
        return;
      }
      for (uint32_t v : avail[depth]) {
        bool ok = true;
        for (uint32_t u : prefix) {
          if (!left.adjacent(u, v)) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        prefix.push_back(v);
        rec(depth + 1);
        prefix.pop_back();
      }
    };
    rec(0);
    return out;
  }

  // Sampling fallback for huge cores: gather a pool well beyond m so the
  // disjoint selection still has slack.
  const uint64_t target = std::max<uint64_t>(64, 50ull * c.m);
  const uint64_t max_draws = std::max<uint64_t>(budget, 100 * target);
  std::set<RTuple> seen;
  for (uint64_t draws = 0; draws < max_draws && seen.size() < target; ++draws) {
    RTuple tuple(r);
    for (uint32_t p = 0; p < r; ++p) {
      tuple[p] = avail[p][rng.bounded(avail[p].size())];
    }
    bool clique = true;
    for (uint32_t i = 0; i < r && clique; ++i) {
      for (uint32_t j = i + 1; j < r && clique; ++j) {
        clique = left.adjacent(tuple[i], tuple[j]);
      }
    }
    if (clique && is_friendly_clique(left, tuple, c)) seen.insert(tuple);
  }
  out.assign(seen.begin(), seen.end());
  return out;
}

// m pairwise disjoint picks, uniform at each stage among the candidates that
// avoid everything chosen so far. Returns false when the pool dries up.
bool select_disjoint(std::vector<RTuple> pool, uint32_t m, Rng& rng,
                     std::vector<RTuple>& out, Bitset& used) {
  for (uint32_t stage = 0; stage < m; ++stage) {
    std::vector<RTuple> alive;
    alive.reserve(pool.size());
    for (auto& t : pool) {
      bool free = true;
      for (uint32_t v : t) {
        if (used.test(v)) {
          free = false;
          break;
        }
      }
      if (free) alive.push_back(std::move(t));
    }
    if (alive.empty()) return false;
    const size_t pick = rng.bounded(alive.size());
    for (uint32_t v : alive[pick]) used.set(v);
    out.push_back(alive[pick]);
    pool = std::move(alive);
    pool.erase(pool.begin() + static_cast<ptrdiff_t>(pick));
  }
  return true;
}

}  // namespace

std::vector<std::vector<uint32_t>> select_a_star(const LeftGraph& left,
                                                 const Constants& c) {
  return pick_a_star(left, c, nullptr);
}

std::vector<std::vector<uint32_t>> select_a_star_random(const LeftGraph& left,
                                                        const Constants& c,
                                                        Rng& rng) {
  return pick_a_star(left, c, &rng);
}

uint32_t absorption_degree(const LeftGraph& left, const Absorber& absorber,
                           uint32_t v, uint32_t r) {
  auto it = absorber.levels.find(r);
  require(it != absorber.levels.end(), ErrorKind::parameter,
          "absorber has no level " + std::to_string(r));
  uint32_t count = 0;
  for (const auto& tuple : it->second) {
    bool all = true;
    for (uint32_t u : tuple) {
      if (!left.adjacent(u, v)) {
        all = false;
        break;
      }
    }
    if (all) ++count;
  }
  return count;
}

AbsorberBuildResult build_absorber(
    const LeftGraph& left, const std::vector<std::vector<uint32_t>>& a_star,
    const Constants& c, Rng& rng, uint32_t max_retries, uint64_t enum_budget) {
  const uint32_t k = left.parts();
  require(a_star.size() == k, ErrorKind::parameter,
          "a_star must have one list per part");

  AbsorberBuildResult best;
  best.absorber.a_star = a_star;
  if (k <= 2) {
    // No levels exist; the empty absorber absorbs vacuously.
    best.attempts = 1;
    best.absorption_ok = true;
    return best;
  }

  const double threshold = c.absorber_extension_threshold();
  bool have_structure = false;
  bool best_set = false;
  std::string exhaust_note;

  for (uint32_t attempt = 0; attempt <= max_retries; ++attempt) {
    Absorber a;
    a.a_star = a_star;
    Bitset used(left.vertices());
    bool built = true;
    for (uint32_t r = 2; r < k; ++r) {
      auto pool = level_candidates(left, a_star, used, r, c, enum_budget, rng);
      std::vector<RTuple> chosen;
      if (!select_disjoint(std::move(pool), c.m, rng, chosen, used)) {
        exhaust_note = "candidate pool exhausted at level " + std::to_string(r);
        built = false;
        break;
      }
      a.levels[r] = std::move(chosen);
    }
    if (!built) continue;
    have_structure = true;

    std::vector<std::pair<uint32_t, uint32_t>> violations;
    for (uint32_t r = 2; r < k; ++r) {
      for (uint32_t v : a_star[r]) {
        if (double(absorption_degree(left, a, v, r)) < threshold) {
          violations.emplace_back(r, v);
        }
      }
    }
    if (violations.empty()) {
      best.absorber = std::move(a);
      best.attempts = attempt + 1;
      best.absorption_ok = true;
      best.violations.clear();
      return best;
    }
    if (!best_set || violations.size() < best.violations.size()) {
      best.absorber = std::move(a);
      best.violations = std::move(violations);
      best_set = true;
    }
    best.attempts = attempt + 1;
  }

  if (!have_structure) {
    fail(ErrorKind::structural,
         exhaust_note.empty() ? "absorber construction failed" : exhaust_note);
  }
  if (c.mode == Constants::Mode::theoretical) {
    fail(ErrorKind::structural,
         "absorption condition unmet after " + std::to_string(best.attempts) +
             " attempts; first violation at level " +
             std::to_string(best.violations.front().first) + ", vertex " +
             std::to_string(best.violations.front().second));
  }
  best.absorption_ok = false;
  return best;
}

}  // namespace tfas
