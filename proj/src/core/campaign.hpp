#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "packing.hpp"

namespace tfas {

// Order derivation strategies. "witness" is the adversarial star-cut order;
// a random-order-only campaign would under-test the all-orders claim.
enum class PiStrategy { random, identity, witness, degree_sorted };

PiStrategy parse_strategy(const std::string& name);
std::string strategy_name(PiStrategy s);
VertexOrder derive_order(const Tournament& t, PiStrategy s, uint64_t seed);

struct CampaignSpec {
  uint32_t k = 2;
  uint32_t n = 10;
  uint32_t trials = 1;
  std::vector<PiStrategy> strategies{PiStrategy::random};
  Constants::Mode mode = Constants::Mode::practical;
  std::map<std::string, double> overrides;
  uint64_t seed = 1;
  uint32_t threads = 1;
  uint32_t retries = 20;
  bool verify_extendability = true;

  nlohmann::json to_json() const;
  static CampaignSpec from_json(const nlohmann::json& j);
};

struct StrategyStats {
  uint32_t trials = 0;
  uint32_t successes = 0;
  std::map<std::string, uint32_t> failure_stages;
  std::map<uint32_t, uint32_t> clique_histogram;  // clique count -> runs
  double total_ms = 0;
  double max_ms = 0;
};

struct CampaignReport {
  CampaignSpec spec;
  std::map<std::string, StrategyStats> per_strategy;
  double wall_ms = 0;

  // "results" is bit-reproducible for a fixed spec under any thread count;
  // "timing" is not and lives apart.
  nlohmann::json to_json() const;
  std::string to_csv() const;
};

CampaignReport run_campaign(const CampaignSpec& spec);

// Monte Carlo drivers for the structural property verifiers: fresh
// tournaments and random witnesses per trial, pass counts out as JSON.
struct VerifySpec {
  uint32_t property = 4;  // 1..4
  uint32_t k = 3;
  uint32_t n = 100;
  uint32_t r = 0;       // 0 = pick a default per property
  uint32_t d = 3;       // tuples per witness for property 3
  uint32_t q_max = 5;   // sequence length cap for property 4
  uint32_t trials = 100;
  uint32_t tournaments = 10;
  uint64_t seed = 1;
  Constants::Mode mode = Constants::Mode::practical;
};

nlohmann::json run_verify(const VerifySpec& spec);

}  // namespace tfas
