#include "campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include "order.hpp"

namespace tfas {

namespace {

constexpr uint64_t kTournamentTag = 0x7452414e44ull;
constexpr uint64_t kOrderTag = 0x4f524445ull;
constexpr uint64_t kPackTag = 0x5041434bull;

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

PiStrategy parse_strategy(const std::string& name) {
  if (name == "random") return PiStrategy::random;
  if (name == "identity") return PiStrategy::identity;
  if (name == "witness") return PiStrategy::witness;
  if (name == "degree_sorted") return PiStrategy::degree_sorted;
  fail(ErrorKind::parameter, "unknown order strategy: " + name);
}

std::string strategy_name(PiStrategy s) {
  switch (s) {
    case PiStrategy::random: return "random";
    case PiStrategy::identity: return "identity";
    case PiStrategy::witness: return "witness";
    case PiStrategy::degree_sorted: return "degree_sorted";
  }
  return "?";
}

VertexOrder derive_order(const Tournament& t, PiStrategy s, uint64_t seed) {
  switch (s) {
    case PiStrategy::random: {
      Rng rng(seed);
      return VertexOrder::random(t.vertices(), rng);
    }
    case PiStrategy::identity:
      return VertexOrder::identity(t.vertices());
    case PiStrategy::witness:
      return upper_bound_witness(t).order;
    case PiStrategy::degree_sorted: {
      // Winners-first heuristic order: descending out-degree, ties by id.
      std::vector<uint32_t> seq(t.vertices());
      for (uint32_t v = 0; v < t.vertices(); ++v) seq[v] = v;
      std::stable_sort(seq.begin(), seq.end(), [&](uint32_t a, uint32_t b) {
        return t.out_degree(a) > t.out_degree(b);
      });
      return VertexOrder::from_sequence(std::move(seq));
    }
  }
  fail(ErrorKind::parameter, "bad strategy");
}

nlohmann::json CampaignSpec::to_json() const {
  std::vector<std::string> names;
  for (auto s : strategies) names.push_back(strategy_name(s));
  return nlohmann::json{{"k", k},
                        {"n", n},
                        {"trials", trials},
                        {"strategies", names},
                        {"mode", mode == Constants::Mode::practical
                                     ? "practical"
                                     : "theoretical"},
                        {"overrides", overrides},
                        {"seed", seed},
                        {"threads", threads},
                        {"retries", retries},
                        {"verify_extendability", verify_extendability}};
}

CampaignSpec CampaignSpec::from_json(const nlohmann::json& j) {
  try {
    CampaignSpec s;
    s.k = j.at("k").get<uint32_t>();
    s.n = j.at("n").get<uint32_t>();
    s.trials = j.at("trials").get<uint32_t>();
    s.strategies.clear();
    for (const auto& name : j.at("strategies")) {
      s.strategies.push_back(parse_strategy(name.get<std::string>()));
    }
    if (j.contains("mode")) {
      s.mode = j.at("mode") == "theoretical" ? Constants::Mode::theoretical
                                             : Constants::Mode::practical;
    }
    if (j.contains("overrides")) {
      s.overrides = j.at("overrides").get<std::map<std::string, double>>();
    }
    if (j.contains("seed")) s.seed = j.at("seed").get<uint64_t>();
    if (j.contains("threads")) s.threads = j.at("threads").get<uint32_t>();
    if (j.contains("retries")) s.retries = j.at("retries").get<uint32_t>();
    if (j.contains("verify_extendability")) {
      s.verify_extendability = j.at("verify_extendability").get<bool>();
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse, std::string("bad campaign spec: ") + e.what());
  }
}

nlohmann::json CampaignReport::to_json() const {
  nlohmann::json results = nlohmann::json::object();
  nlohmann::json timing = nlohmann::json::object();
  for (const auto& [name, st] : per_strategy) {
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [cliques, runs] : st.clique_histogram) {
      hist[std::to_string(cliques)] = runs;
    }
    results[name] = {{"trials", st.trials},
                     {"successes", st.successes},
                     {"failure_stages", st.failure_stages},
                     {"clique_histogram", hist}};
    timing[name] = {{"total_ms", st.total_ms}, {"max_ms", st.max_ms}};
  }
  timing["wall_ms"] = wall_ms;
  return nlohmann::json{
      {"spec", spec.to_json()}, {"results", results}, {"timing", timing}};
}

std::string CampaignReport::to_csv() const {
  // One row per (strategy, outcome bucket); per-strategy counts sum to the
  // trial count. Columns are documented in the README.
  std::ostringstream out;
  out << "strategy,outcome,detail,cliques,count\n";
  for (const auto& [name, st] : per_strategy) {
    for (const auto& [cliques, runs] : st.clique_histogram) {
      out << name << ",success,," << cliques << "," << runs << "\n";
    }
    for (const auto& [stage, runs] : st.failure_stages) {
      out << name << ",failure," << stage << ",," << runs << "\n";
    }
  }
  return out.str();
}

CampaignReport run_campaign(const CampaignSpec& spec) {
  require(spec.trials >= 1, ErrorKind::parameter, "trials must be >= 1");
  require(!spec.strategies.empty(), ErrorKind::parameter,
          "need at least one order strategy");
  require(spec.k >= 2 && spec.n >= 1, ErrorKind::parameter, "bad k or n");

  const Constants constants =
      make_constants(spec.mode, spec.k, spec.n, spec.overrides);
  if (spec.k >= 3) {
    require(spec.n > spec.k * (uint64_t(constants.m) + 1), ErrorKind::parameter,
            "n must exceed k(m+1) for the packing pipeline");
  }
  for (PiStrategy s : spec.strategies) {
    if (s == PiStrategy::witness) {
      require(spec.n >= spec.k - 1, ErrorKind::parameter,
              "witness strategy needs n >= k-1");
    }
  }
  const auto start = std::chrono::steady_clock::now();

  struct Slot {
    bool success = false;
    std::string stage;
    uint32_t cliques = 0;
    double ms = 0;
  };
  std::vector<Slot> slots(size_t(spec.trials) * spec.strategies.size());

  std::atomic<uint32_t> next_trial{0};
  auto worker = [&]() {
    for (;;) {
      const uint32_t i = next_trial.fetch_add(1);
      if (i >= spec.trials) return;
      const Tournament t =
          Tournament::sample_random(spec.n, spec.k, mix_seed(spec.seed, i, kTournamentTag));
      for (uint32_t j = 0; j < spec.strategies.size(); ++j) {
        const auto t0 = std::chrono::steady_clock::now();
        Slot& slot = slots[size_t(i) * spec.strategies.size() + j];
        try {
          const VertexOrder order = derive_order(
              t, spec.strategies[j], mix_seed(spec.seed, i, kOrderTag + j));
          PackingResult res = find_clique_packing(
              t, order, constants, mix_seed(spec.seed, i, kPackTag + j),
              spec.retries, spec.verify_extendability);
          slot.success = res.success();
          slot.cliques = static_cast<uint32_t>(res.cliques.size());
          slot.stage = res.stage;
        } catch (const std::exception& e) {
          // Threads must not leak exceptions; anything unexpected becomes a
          // counted failure with its message as the stage.
          slot.success = false;
          slot.stage = std::string("error: ") + e.what();
        }
        slot.ms = ms_since(t0);
      }
    }
  };

  const uint32_t nthreads =
      std::max(1u, std::min(spec.threads, spec.trials));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (uint32_t w = 0; w < nthreads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  CampaignReport report;
  report.spec = spec;
  for (uint32_t j = 0; j < spec.strategies.size(); ++j) {
    StrategyStats st;
    st.trials = spec.trials;
    for (uint32_t i = 0; i < spec.trials; ++i) {
      const Slot& slot = slots[size_t(i) * spec.strategies.size() + j];
      if (slot.success) {
        ++st.successes;
        ++st.clique_histogram[slot.cliques];
      } else {
        ++st.failure_stages[slot.stage.empty() ? "unknown" : slot.stage];
      }
      st.total_ms += slot.ms;
      st.max_ms = std::max(st.max_ms, slot.ms);
    }
    report.per_strategy[strategy_name(spec.strategies[j])] = std::move(st);
  }
  report.wall_ms = ms_since(start);
  return report;
}

nlohmann::json run_verify(const VerifySpec& spec) {
  require(spec.property >= 1 && spec.property <= 4, ErrorKind::parameter,
          "property must be 1..4");
  require(spec.k >= 2 && spec.n >= 1, ErrorKind::parameter, "bad k or n");
  require(spec.trials >= 1 && spec.tournaments >= 1, ErrorKind::parameter,
          "trials and tournaments must be >= 1");
  const Constants constants = make_constants(spec.mode, spec.k, spec.n, {});

  uint32_t r = spec.r;
  if (r == 0) r = spec.property == 2 ? std::min(2u, spec.k - 1) : 1;
  require(r >= 1 && r < spec.k, ErrorKind::parameter, "need 1 <= r < k");

  uint64_t passes = 0;
  uint64_t runs = 0;
  nlohmann::json failures = nlohmann::json::array();

  const uint32_t per_tournament =
      (spec.trials + spec.tournaments - 1) / spec.tournaments;
  for (uint32_t ti = 0; ti < spec.tournaments && runs < spec.trials; ++ti) {
    const Tournament t = Tournament::sample_random(
        spec.n, spec.k, mix_seed(spec.seed, ti, kTournamentTag));
    Rng rng(mix_seed(spec.seed, ti, 0x7e57ull));

    for (uint32_t it = 0; it < per_tournament && runs < spec.trials; ++it) {
      ++runs;
      bool pass = false;
      nlohmann::json detail;
      switch (spec.property) {
        case 1: {
          const VertexOrder order = VertexOrder::random(t.vertices(), rng);
          const LeftGraph left(t, order);
          // Random perfect r-set: independent shuffles per part, columns
          // glued into tuples.
          std::vector<std::vector<uint32_t>> cols(r);
          for (uint32_t p = 0; p < r; ++p) {
            cols[p] = t.layout().part_vertices(p);
            rng.shuffle(cols[p]);
          }
          std::vector<RTuple> tuples(spec.n);
          for (uint32_t i = 0; i < spec.n; ++i) {
            for (uint32_t p = 0; p < r; ++p) tuples[i].push_back(cols[p][i]);
          }
          auto res = check_property1(left, tuples,
                                     t.layout().part_vertices(r), r, constants);
          pass = res.pass;
          detail = {{"edges", res.edges}, {"bound", res.bound}};
          break;
        }
        case 2: {
          const VertexOrder order = VertexOrder::random(t.vertices(), rng);
          const LeftGraph left(t, order);
          std::vector<std::vector<uint32_t>> s_sets(r);
          for (uint32_t p = 0; p < r; ++p) {
            s_sets[p] = t.layout().part_vertices(p);
          }
          auto res = check_property2(left, s_sets, constants);
          pass = res.pass;
          detail = {{"count", res.count},
                    {"bound", res.bound},
                    {"estimated", res.estimated}};
          break;
        }
        case 3: {
          // d pairwise disjoint r-tuples with random sign vectors, random
          // later target part.
          std::vector<RTuple> tuples(spec.d);
          std::vector<std::vector<uint32_t>> cols(r);
          for (uint32_t p = 0; p < r; ++p) {
            cols[p] = t.layout().part_vertices(p);
            rng.shuffle(cols[p]);
          }
          require(spec.d <= spec.n, ErrorKind::parameter,
                  "d exceeds part size");
          for (uint32_t i = 0; i < spec.d; ++i) {
            for (uint32_t p = 0; p < r; ++p) tuples[i].push_back(cols[p][i]);
          }
          std::vector<Signs> w_hat;
          for (uint32_t i = 0; i < spec.d; ++i) {
            std::vector<bool> bits(r);
            for (uint32_t p = 0; p < r; ++p) bits[p] = rng.coin();
            w_hat.emplace_back(std::move(bits));
          }
          const uint32_t target =
              r + static_cast<uint32_t>(rng.bounded(spec.k - r));
          auto res = check_property3(t, tuples, w_hat, target);
          pass = res.pass;
          detail = {{"size", res.size}, {"bound", res.bound}};
          break;
        }
        case 4: {
          const uint32_t q =
              1 + static_cast<uint32_t>(rng.bounded(spec.q_max));
          const uint32_t ell = static_cast<uint32_t>(rng.bounded(spec.k));
          auto picks = rng.sample_distinct(spec.n, q);
          std::vector<uint32_t> seq;
          for (uint32_t x : picks) seq.push_back(t.layout().offset(ell) + x);
          std::vector<bool> bits(q);
          for (uint32_t i = 0; i < q; ++i) bits[i] = rng.coin();
          const uint32_t s_part = static_cast<uint32_t>(rng.bounded(spec.k));
          auto res = check_property4(t, seq, Signs(std::move(bits)), s_part);
          pass = res.pass;
          detail = {{"size", res.size}, {"bound", res.bound}, {"q", q}};
          break;
        }
      }
      if (pass) {
        ++passes;
      } else if (failures.size() < 16) {
        detail["tournament"] = ti;
        failures.push_back(detail);
      }
    }
  }

  return nlohmann::json{{"property", spec.property},
                        {"k", spec.k},
                        {"n", spec.n},
                        {"r", r},
                        {"d", spec.d},
                        {"q_max", spec.q_max},
                        {"trials", runs},
                        {"passes", passes},
                        {"failures", runs - passes},
                        {"failure_samples", failures},
                        {"seed", spec.seed}};
}

}  // namespace tfas
