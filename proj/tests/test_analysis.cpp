#include "core/analysis.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace tfas;

TEST_CASE("consistent set matches the out/in intersection directly") {
  Tournament t = Tournament::sample_random(40, 2, 321);
  // D = (+,-) over two part-0 vertices: N+(u) ∩ N-(v) in part 1.
  Bitset got = consistent_set(t, {0, 1}, Signs::parse("+-"), 1);
  Bitset want = t.out_row(0);
  want &= t.in_row(1);
  want &= t.layout().mask(1);
  CHECK(got == want);
}

TEST_CASE("consistent set of a single edge") {
  Tournament t = test::realize({1, 1}, {{0, 1}});  // 0 -> 1
  Bitset c = consistent_set(t, {0}, Signs::parse("+"), 1);
  CHECK(c.count() == 1);
  CHECK(c.test(1));
  CHECK(consistent_set(t, {0}, Signs::parse("-"), 1).none());
}

TEST_CASE("extending the pattern never grows the consistent set") {
  Tournament t = Tournament::sample_random(30, 3, 99);
  Rng rng(5);
  for (int it = 0; it < 50; ++it) {
    auto picks = rng.sample_distinct(30, 3);
    std::vector<uint32_t> seq = {picks[0], picks[1]};
    std::vector<uint32_t> longer = {picks[0], picks[1], picks[2]};
    std::vector<bool> signs = {rng.coin(), rng.coin()};
    std::vector<bool> more = signs;
    more.push_back(rng.coin());
    Bitset small = consistent_set(t, longer, Signs(more), 2);
    Bitset big = consistent_set(t, seq, Signs(signs), 2);
    CHECK((small & big) == small);  // small ⊆ big
  }
}

TEST_CASE("sign/sequence length mismatch is rejected") {
  Tournament t = Tournament::sample_random(4, 2, 1);
  CHECK_THROWS_AS(consistent_set(t, {0, 1}, Signs::parse("+"), 1), Error);
  CHECK_THROWS_AS(consistent_set(t, {0, 0}, Signs::parse("++"), 1), Error);
}

TEST_CASE("single-pattern inconsistency is the complement of consistency") {
  Tournament t = Tournament::sample_random(25, 3, 7);
  RTuple p = {0, 25};  // first vertex of part 0 and of part 1
  Signs w = Signs::parse("+-");
  Bitset inc = inconsistent_set(t, {p}, {w}, 2);
  Bitset comp = t.layout().mask(2);
  comp -= w_consistent_set(t, p, w, 2);
  CHECK(inc == comp);
}

TEST_CASE("empty pattern family leaves the whole part inconsistent") {
  Tournament t = Tournament::sample_random(10, 2, 3);
  CHECK(inconsistent_set(t, {}, {}, 1).count() == 10);
}

TEST_CASE("overlapping tuples are rejected") {
  Tournament t = Tournament::sample_random(5, 3, 3);
  RTuple a = {0, 5};
  CHECK_THROWS_AS(inconsistent_set(t, {a, a},
                                   {Signs::parse("++"), Signs::parse("--")}, 2),
                  Error);
}

TEST_CASE("inconsistent sets concentrate under the d-fold product bound") {
  // |I| <= n (1 - 2^-r)^d + n^(2/3), sampled.
  const uint32_t n = 400;
  int pass = 0, trials = 0;
  for (uint64_t seed = 0; seed < 25; ++seed) {
    Tournament t = Tournament::sample_random(n, 3, 6000 + seed);
    Rng rng(seed);
    for (int it = 0; it < 8; ++it) {
      std::vector<RTuple> tuples;
      auto c0 = rng.sample_distinct(n, 3);
      auto c1 = rng.sample_distinct(n, 3);
      for (int i = 0; i < 3; ++i) {
        tuples.push_back({c0[i], n + c1[i]});
      }
      std::vector<Signs> w_hat;
      for (int i = 0; i < 3; ++i) {
        w_hat.push_back(Signs({rng.coin(), rng.coin()}));
      }
      ++trials;
      if (check_property3(t, tuples, w_hat, 2).pass) ++pass;
    }
  }
  CHECK(pass == trials);
}

TEST_CASE("friendly vertices: complete and empty graphs") {
  LeftGraph full = test::complete_left({4, 4, 4});
  auto f = friendly_vertices(full, 4.0);
  for (auto& part : f) CHECK(part.size() == 4);

  LeftGraph none = test::empty_left({4, 4});
  auto g = friendly_vertices(none, 1.0);
  CHECK(g[0].empty());
  CHECK(g[1].empty());
}

TEST_CASE("friendliness is monotone in the threshold") {
  Tournament t = Tournament::sample_random(30, 3, 41);
  Rng rng(2);
  LeftGraph left(t, VertexOrder::random(t.vertices(), rng));
  auto lo = friendly_vertices(left, 3.0);
  auto hi = friendly_vertices(left, 9.0);
  for (uint32_t p = 0; p < 3; ++p) {
    CHECK(hi[p].size() <= lo[p].size());
    for (uint32_t v : hi[p]) {
      CHECK(std::find(lo[p].begin(), lo[p].end(), v) != lo[p].end());
    }
  }
}

TEST_CASE("almost every vertex is friendly at the n/17 threshold") {
  // Random order, random tournament: at most k-1 misses per part.
  const uint32_t n = 300;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    Tournament t = Tournament::sample_random(n, 3, 7700 + seed);
    Rng rng(seed);
    LeftGraph left(t, VertexOrder::random(t.vertices(), rng));
    auto f = friendly_vertices(left, n / 17.0);
    for (auto& part : f) CHECK(part.size() >= n - 2);
  }
}

TEST_CASE("each side keeps at most one low-degree vertex, k=2") {
  const uint32_t n = 500;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    Tournament t = Tournament::sample_random(n, 2, 91000 + seed);
    Rng rng(seed);
    LeftGraph left(t, VertexOrder::random(t.vertices(), rng));
    for (uint32_t p = 0; p < 2; ++p) {
      uint32_t low = 0;
      for (uint32_t v : t.layout().part_vertices(p)) {
        if (double(left.degree(v)) < n / 18.0) ++low;
      }
      CHECK(low <= 1);
    }
  }
}

TEST_CASE("sign vector parsing") {
  CHECK(Signs::parse("+-+").str() == "+-+");
  CHECK_THROWS_AS(Signs::parse("+x"), Error);
  CHECK_THROWS_AS(Signs::parse(""), Error);
}

TEST_CASE("friendly clique checks") {
  Constants c = theoretical_constants(3, 4);
  LeftGraph full = test::complete_left({4, 4, 4});
  CHECK(is_friendly_clique(full, {0, 4, 8}, c));  // r = k: vacuous tail
  CHECK(is_friendly_clique(full, {0, 4}, c));

  // A 2-clique whose endpoints share no neighbors in part 2.
  LeftGraph sparse = test::realize_left({2, 2, 2}, {{0, 2}});
  CHECK_FALSE(is_friendly_clique(sparse, {0, 2}, c));

  // Not a clique at all -> precondition error.
  CHECK_THROWS_AS(is_friendly_clique(sparse, {1, 3}, c), Error);
  // Wrong part pattern.
  CHECK_THROWS_AS(is_friendly_clique(full, {4, 0}, c), Error);
}

TEST_CASE("property 1 on extreme graphs") {
  Constants c = practical_constants(2, 3);
  LeftGraph full = test::complete_left({3, 3});
  std::vector<RTuple> r_tuples = {{0}, {1}, {2}};
  std::vector<uint32_t> s = {3, 4, 5};
  auto res = check_property1(full, r_tuples, s, 1, c);
  CHECK(res.edges == 9);
  CHECK(res.bound == doctest::Approx(9.0 / 4.0));
  CHECK(res.pass);

  LeftGraph none = test::empty_left({3, 3});
  auto res2 = check_property1(none, r_tuples, s, 1, c);
  CHECK(res2.edges == 0);
  CHECK_FALSE(res2.pass);
}

TEST_CASE("property 1 holds on random instances at full witness size") {
  const uint32_t n = 300;
  Constants c = practical_constants(2, n);
  int pass = 0;
  const int trials = 30;
  for (int i = 0; i < trials; ++i) {
    Tournament t = Tournament::sample_random(n, 2, 850 + i);
    Rng rng(i);
    LeftGraph left(t, VertexOrder::random(t.vertices(), rng));
    std::vector<RTuple> tuples;
    for (uint32_t v = 0; v < n; ++v) tuples.push_back({v});
    auto res =
        check_property1(left, tuples, t.layout().part_vertices(1), 1, c);
    if (res.pass) ++pass;
    CHECK(res.meaningful);
  }
  CHECK(pass == trials);
}

TEST_CASE("property 2 reduces to friendly vertex counting at r=1") {
  const uint32_t n = 6;
  Constants c = theoretical_constants(3, n);
  LeftGraph full = test::complete_left({n, n, n});
  auto res = check_property2(full, {full.layout().part_vertices(0)}, c);
  CHECK(res.count == n);  // every vertex friendly in the complete graph
  CHECK(res.bound == doctest::Approx(0.5 * n / 18.0));
  CHECK(res.pass);
  CHECK_FALSE(res.estimated);

  auto empty = check_property2(full, {std::vector<uint32_t>{}}, c);
  CHECK(empty.count == 0);
  CHECK_FALSE(empty.pass);
}

TEST_CASE("property 2 passes on random tournaments at r=2") {
  const uint32_t n = 200;
  Constants c = practical_constants(3, n);
  int pass = 0;
  const int trials = 30;
  for (int i = 0; i < trials; ++i) {
    Tournament t = Tournament::sample_random(n, 3, 4200 + i);
    Rng rng(i);
    LeftGraph left(t, VertexOrder::random(t.vertices(), rng));
    auto res = check_property2(
        left, {t.layout().part_vertices(0), t.layout().part_vertices(1)}, c);
    if (res.pass) ++pass;
  }
  CHECK(pass >= trials - 1);
}

TEST_CASE("property 2 sampling fallback stays close to the exact count") {
  const uint32_t n = 60;
  Constants c = practical_constants(3, n);
  Tournament t = Tournament::sample_random(n, 3, 31);
  Rng rng(4);
  LeftGraph left(t, VertexOrder::random(t.vertices(), rng));
  std::vector<std::vector<uint32_t>> s_sets = {t.layout().part_vertices(0),
                                               t.layout().part_vertices(1)};
  auto exact = check_property2(left, s_sets, c);
  REQUIRE_FALSE(exact.estimated);
  auto est = check_property2(left, s_sets, c, /*budget=*/100,
                             /*allow_estimate=*/true, /*sample_size=*/200000,
                             /*sample_seed=*/9);
  CHECK(est.estimated);
  CHECK(est.count == doctest::Approx(exact.count).epsilon(0.15));
  CHECK_THROWS_AS(
      check_property2(left, s_sets, c, 100, /*allow_estimate=*/false), Error);
}

TEST_CASE("property 3 edge cases") {
  Tournament t = Tournament::sample_random(100, 2, 17);
  auto res = check_property3(t, {}, {}, 1);
  CHECK(res.pass);  // d=0 bound exceeds n

  // Adversarial: vertex 0 beats everyone in part 1, so every part-1 vertex is
  // (+)-inconsistent with the tuple (0).
  const uint32_t n = 64;
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  for (uint32_t v = n; v < 2 * n; ++v) edges.emplace_back(0, v);
  Tournament adv = test::realize({n, n}, edges);
  auto bad = check_property3(adv, {{0}}, {Signs::parse("+")}, 1);
  CHECK(bad.size == n);
  CHECK_FALSE(bad.pass);
}

TEST_CASE("property 4 edge cases and concentration") {
  Tournament t = Tournament::sample_random(50, 2, 23);
  // Target part equals the sequence's part: empty by construction.
  auto same = check_property4(t, {0, 1}, Signs::parse("+-"), 0);
  CHECK(same.size == 0);
  CHECK(same.pass);

  // Adversarial single vertex dominating its cross part.
  const uint32_t n = 64;
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  for (uint32_t v = n; v < 2 * n; ++v) edges.emplace_back(0, v);
  Tournament adv = test::realize({n, n}, edges);
  auto bad = check_property4(adv, {0}, Signs::parse("+"), 1);
  CHECK(bad.size == n);
  CHECK_FALSE(bad.pass);

  // Random single-vertex witnesses concentrate under n/2 + n^(2/3).
  const uint32_t big = 500;
  Tournament r = Tournament::sample_random(big, 2, 555);
  int pass = 0, trials = 0;
  for (uint32_t v = 0; v < 100; ++v) {
    ++trials;
    if (check_property4(r, {v}, Signs::parse("+"), 1).pass) ++pass;
  }
  CHECK(pass == trials);

  CHECK_THROWS_AS(check_property4(t, {0, 50}, Signs::parse("++"), 1), Error);
}
