#include "analysis.hpp"

#include <cmath>

namespace tfas {

Signs Signs::parse(const std::string& s) {
  std::vector<bool> bits;
  bits.reserve(s.size());
  for (char ch : s) {
    if (ch == '+') {
      bits.push_back(true);
    } else if (ch == '-') {
      bits.push_back(false);
    } else {
      fail(ErrorKind::parameter, "sign vector may contain only + and -");
    }
  }
  require(!bits.empty(), ErrorKind::parameter, "sign vector must be nonempty");
  return Signs(std::move(bits));
}

std::string Signs::str() const {
  std::string s;
  s.reserve(bits.size());
  for (bool b : bits) s.push_back(b ? '+' : '-');
  return s;
}

namespace {

void check_seq(const Tournament& t, const std::vector<uint32_t>& seq,
               size_t sign_len, uint32_t target_part) {
  require(seq.size() == sign_len, ErrorKind::parameter,
          "sequence length " + std::to_string(seq.size()) +
              " does not match sign vector length " + std::to_string(sign_len));
  require(target_part < t.parts(), ErrorKind::parameter,
          "target part out of range");
  std::vector<bool> seen(t.vertices(), false);
  for (uint32_t v : seq) {
    require(t.layout().valid_vertex(v), ErrorKind::parameter,
            "vertex out of range");
    require(!seen[v], ErrorKind::parameter, "sequence vertices must be distinct");
    seen[v] = true;
  }
}

}  // namespace

Bitset consistent_set(const Tournament& t, const std::vector<uint32_t>& seq,
                      const Signs& D, uint32_t target_part) {
  check_seq(t, seq, D.size(), target_part);
  Bitset acc = t.layout().mask(target_part);
  for (size_t j = 0; j < seq.size(); ++j) {
    acc &= D.plus(j) ? t.out_row(seq[j]) : t.in_row(seq[j]);
  }
  return acc;
}

Bitset w_consistent_set(const Tournament& t, const RTuple& p, const Signs& W,
                        uint32_t target_part) {
  check_seq(t, p, W.size(), target_part);
  Bitset acc = t.layout().mask(target_part);
  for (size_t i = 0; i < p.size(); ++i) {
    // '+' wants the edge (v, p[i]), so v must be an in-neighbor of p[i].
    acc &= W.plus(i) ? t.in_row(p[i]) : t.out_row(p[i]);
  }
  return acc;
}

Bitset inconsistent_set(const Tournament& t, const std::vector<RTuple>& tuples,
                        const std::vector<Signs>& w_hat,
                        uint32_t target_part) {
  require(tuples.size() == w_hat.size(), ErrorKind::parameter,
          "tuple count does not match sign-vector count");
  require(target_part < t.parts(), ErrorKind::parameter,
          "target part out of range");
  std::vector<bool> seen(t.vertices(), false);
  for (const auto& p : tuples) {
    for (uint32_t v : p) {
      require(t.layout().valid_vertex(v), ErrorKind::parameter,
              "vertex out of range");
      require(!seen[v], ErrorKind::parameter, "tuples must be pairwise disjoint");
      seen[v] = true;
    }
  }
  Bitset acc = t.layout().mask(target_part);
  for (size_t i = 0; i < tuples.size(); ++i) {
    Bitset consistent = w_consistent_set(t, tuples[i], w_hat[i], target_part);
    acc -= consistent;
  }
  return acc;
}

std::vector<std::vector<uint32_t>> friendly_vertices(const LeftGraph& left,
                                                     double threshold) {
  std::vector<std::vector<uint32_t>> out(left.parts());
  for (uint32_t p = 0; p < left.parts(); ++p) {
    for (uint32_t v : left.layout().part_vertices(p)) {
      bool ok = true;
      for (uint32_t q = 0; q < left.parts() && ok; ++q) {
        if (q == p) continue;
        ok = double(left.degree_in_part(v, q)) >= threshold;
      }
      if (ok) out[p].push_back(v);
    }
  }
  return out;
}

bool is_friendly_clique(const LeftGraph& left, const RTuple& clique,
                        const Constants& c) {
  const uint32_t r = static_cast<uint32_t>(clique.size());
  require(r >= 1 && r <= left.parts(), ErrorKind::parameter,
          "clique size out of range");
  for (uint32_t i = 0; i < r; ++i) {
    require(left.layout().part_of(clique[i]) == i, ErrorKind::parameter,
            "clique must take one vertex per part, in part order");
    for (uint32_t j = i + 1; j < r; ++j) {
      require(left.adjacent(clique[i], clique[j]), ErrorKind::parameter,
              "input does not induce a clique in the left graph");
    }
  }
  for (uint32_t t = r; t < left.parts(); ++t) {
    Bitset acc = left.part_mask(t);
    for (uint32_t rp = 1; rp <= r; ++rp) {
      acc &= left.row(clique[rp - 1]);
      if (double(acc.count()) < c.friendly_clique_threshold(rp)) return false;
    }
  }
  return true;
}

Property1Result check_property1(const LeftGraph& left,
                                const std::vector<RTuple>& r_tuples,
                                const std::vector<uint32_t>& s_vertices,
                                uint32_t r, const Constants& c) {
  require(r >= 1 && r < left.parts(), ErrorKind::parameter, "need 1 <= r < k");
  std::vector<bool> seen(left.vertices(), false);
  for (const auto& p : r_tuples) {
    require(p.size() == r, ErrorKind::parameter, "tuple arity mismatch");
    for (uint32_t v : p) {
      require(!seen[v], ErrorKind::parameter, "tuples must be pairwise disjoint");
      seen[v] = true;
    }
  }
  Bitset s_mask(left.vertices());
  for (uint32_t v : s_vertices) {
    require(left.layout().part_of(v) == r, ErrorKind::parameter,
            "S must lie inside part r+1");
    s_mask.set(v);
  }

  Property1Result res;
  for (const auto& p : r_tuples) {
    Bitset acc = s_mask;
    for (uint32_t v : p) acc &= left.row(v);
    res.edges += acc.count();
  }
  res.bound = double(r_tuples.size()) * double(s_vertices.size()) /
              std::pow(2.0, double(r) + 1.0);
  res.pass = double(res.edges) >= res.bound;
  const double floor_size = c.epsilon * double(c.n);
  res.meaningful = double(r_tuples.size()) >= floor_size &&
                   double(s_vertices.size()) >= floor_size;
  return res;
}

namespace {

// Count tuples in S_1 x ... x S_r that induce friendly cliques, by prefix
// backtracking. Stops and reports when `budget` tuples have been inspected.
struct CliqueCounter {
  const LeftGraph& left;
  const std::vector<std::vector<uint32_t>>& s_sets;
  const Constants& c;
  uint64_t budget;
  uint64_t inspected = 0;
  uint64_t found = 0;
  bool aborted = false;

  void rec(std::vector<uint32_t>& prefix) {
    if (aborted) return;
    const uint32_t depth = static_cast<uint32_t>(prefix.size());
    if (depth == s_sets.size()) {
      ++inspected;
      if (inspected > budget) {
        aborted = true;
        return;
      }
      if (is_friendly_clique(left, prefix, c)) ++found;
      return;
    }
    for (uint32_t v : s_sets[depth]) {
      bool clique = true;
      for (uint32_t u : prefix) {
        if (!left.adjacent(u, v)) {
          clique = false;
          break;
        }
      }
      if (!clique) {
        // Every completion of a non-clique prefix is a non-clique; count the
        // pruned subtree against the inspection budget conservatively.
        ++inspected;
        if (inspected > budget) {
          aborted = true;
          return;
        }
        continue;
      }
      prefix.push_back(v);
      rec(prefix);
      prefix.pop_back();
      if (aborted) return;
    }
  }
};

}  // namespace

Property2Result check_property2(const LeftGraph& left,
                                const std::vector<std::vector<uint32_t>>& s_sets,
                                const Constants& c, uint64_t budget,
                                bool allow_estimate, uint64_t sample_size,
                                uint64_t sample_seed) {
  const uint32_t r = static_cast<uint32_t>(s_sets.size());
  require(r >= 1 && r < left.parts(), ErrorKind::parameter, "need 1 <= r < k");
  for (uint32_t i = 0; i < r; ++i) {
    for (uint32_t v : s_sets[i]) {
      require(left.layout().part_of(v) == i, ErrorKind::parameter,
              "S_i must lie inside part i");
    }
  }

  Property2Result res;
  res.bound = 0.5 * std::pow(c.mu(), double(r)) * std::pow(double(c.n), double(r)) *
              std::pow(2.0, -double(r) * (r - 1) / 2.0);

  double space = 1;
  for (const auto& s : s_sets) space *= double(s.size());
  if (space == 0) {
    res.pass = 0 >= res.bound;
    return res;
  }

  CliqueCounter counter{left, s_sets, c, budget};
  std::vector<uint32_t> prefix;
  counter.rec(prefix);
  if (!counter.aborted) {
    res.count = double(counter.found);
    res.inspected = counter.inspected;
    res.pass = res.count >= res.bound;
    return res;
  }

  require(allow_estimate, ErrorKind::resource,
          "friendly-clique enumeration budget exceeded");
  Rng rng(sample_seed);
  uint64_t hits = 0;
  for (uint64_t it = 0; it < sample_size; ++it) {
    RTuple tuple(r);
    for (uint32_t i = 0; i < r; ++i) {
      tuple[i] = s_sets[i][rng.bounded(s_sets[i].size())];
    }
    bool clique = true;
    for (uint32_t i = 0; i < r && clique; ++i) {
      for (uint32_t j = i + 1; j < r && clique; ++j) {
        clique = left.adjacent(tuple[i], tuple[j]);
      }
    }
    if (clique && is_friendly_clique(left, tuple, c)) ++hits;
  }
  res.count = double(hits) / double(sample_size) * space;
  res.inspected = sample_size;
  res.estimated = true;
  res.pass = res.count >= res.bound;
  return res;
}

PropertyCheck check_property3(const Tournament& t,
                              const std::vector<RTuple>& tuples,
                              const std::vector<Signs>& w_hat,
                              uint32_t target_part) {
  PropertyCheck res;
  const uint32_t n = t.layout().size(target_part);
  const uint32_t d = static_cast<uint32_t>(tuples.size());
  if (d == 0) {
    res.size = n;
    res.bound = double(n) + std::floor(std::pow(double(n), 2.0 / 3.0));
    res.pass = true;
    return res;
  }
  const uint32_t r = static_cast<uint32_t>(tuples[0].size());
  res.size = inconsistent_set(t, tuples, w_hat, target_part).count();
  res.bound = double(n) * std::pow(1.0 - std::pow(2.0, -double(r)), double(d)) +
              std::floor(std::pow(double(n), 2.0 / 3.0));
  res.pass = double(res.size) <= res.bound;
  return res;
}

PropertyCheck check_property4(const Tournament& t,
                              const std::vector<uint32_t>& seq, const Signs& D,
                              uint32_t s_part) {
  require(!seq.empty(), ErrorKind::parameter, "sequence must be nonempty");
  const uint32_t ell = t.layout().part_of(seq[0]);
  for (uint32_t v : seq) {
    require(t.layout().part_of(v) == ell, ErrorKind::parameter,
            "sequence must stay inside one part");
  }
  PropertyCheck res;
  const uint32_t n = t.layout().size(s_part);
  res.size = consistent_set(t, seq, D, s_part).count();
  res.bound = double(n) * std::pow(0.5, double(seq.size())) +
              std::floor(std::pow(double(n), 2.0 / 3.0));
  res.pass = double(res.size) <= res.bound;
  return res;
}

}  // namespace tfas
