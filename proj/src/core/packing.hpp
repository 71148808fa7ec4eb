#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "absorber.hpp"

namespace tfas {

struct MatchingResult {
  std::vector<int32_t> left_match;   // -1 when unmatched
  std::vector<int32_t> right_match;
  uint32_t size = 0;
};

// Maximum-cardinality matching, Hopcroft-Karp. Deterministic for a given
// adjacency order.
MatchingResult hopcroft_karp(uint32_t nl, uint32_t nr,
                             const std::vector<std::vector<uint32_t>>& adj);

MatchingResult bipartite_max_matching(
    uint32_t nl, uint32_t nr,
    const std::function<bool(uint32_t, uint32_t)>& adjacent);

// True iff no augmenting path exists for the given matching (optimality
// certificate, checkable without rerunning the solver).
bool matching_is_maximum(uint32_t nl, uint32_t nr,
                         const std::vector<std::vector<uint32_t>>& adj,
                         const MatchingResult& m);

// For a maximum matching that is not left-perfect: a set R of left vertices
// with |N(R)| < |R| (König-style alternating reachability from the free left
// vertices).
std::vector<uint32_t> hall_violator(uint32_t nl,
                                    const std::vector<std::vector<uint32_t>>& adj,
                                    const MatchingResult& m);

// n pairwise disjoint part-ordered r-tuples covering parts 0..r-1; the tuples
// listed in `star` induce r-cliques in the working left graph and take one
// vertex from each friendly core.
struct PerfectRSet {
  uint32_t r = 0;
  std::vector<RTuple> tuples;
  std::vector<uint32_t> star;
};

struct HallReport {
  std::string stage;                  // "h1", "h2", ...
  uint32_t r = 0;                     // matching stage index
  std::vector<uint32_t> left_vertices;  // h1 only
  std::vector<RTuple> left_tuples;      // h2.. only
  std::vector<uint32_t> neighborhood;   // right-side neighborhood of the set
  nlohmann::json to_json() const;
};

// Expected stage outcomes (no perfect matching, thin cores, ...) travel as
// this exception inside the pipeline and surface as a structured result.
class StageFailure : public std::exception {
 public:
  StageFailure(std::string stage, std::string diagnostic,
               std::optional<HallReport> hall = std::nullopt)
      : stage_(std::move(stage)),
        diagnostic_(std::move(diagnostic)),
        hall_(std::move(hall)) {}
  const char* what() const noexcept override { return diagnostic_.c_str(); }
  const std::string& stage() const { return stage_; }
  const std::string& diagnostic() const { return diagnostic_; }
  const std::optional<HallReport>& hall() const { return hall_; }

 private:
  std::string stage_;
  std::string diagnostic_;
  std::optional<HallReport> hall_;
};

struct PackingResult {
  enum class Status { success, stage_failure };
  Status status = Status::stage_failure;
  std::string stage;
  std::string diagnostic;
  std::vector<RTuple> cliques;
  std::optional<HallReport> hall;
  nlohmann::json trace;

  bool success() const { return status == Status::success; }
  nlohmann::json to_json() const;
};

// One bipartite matching stage as the pipeline sees it, with the friendly
// filter already applied. Lives here so certificates can be re-derived from
// first principles.
struct StageGraph {
  uint32_t r = 0;
  std::vector<uint32_t> left_vertices;  // h1
  std::vector<RTuple> left_tuples;      // h2..
  std::vector<uint32_t> right_vertices;
  std::vector<std::vector<uint32_t>> adj;  // left index -> right indices
  uint64_t unfiltered_edges = 0;
  uint64_t removed_edges = 0;
};

// Friendly filter on the edges of the first-stage bipartite graph: an edge
// survives when its endpoints keep enough common neighbors in every later
// core slice. Returns kept edges as (b1 vertex, b2 vertex).
struct FilterStats {
  std::vector<std::pair<uint32_t, uint32_t>> kept;
  uint64_t total = 0;
  uint64_t removed = 0;
};
FilterStats friendly_h1_filter(const LeftGraph& left,
                               const std::vector<uint32_t>& b1,
                               const std::vector<uint32_t>& b2,
                               const std::vector<Bitset>& b_masks,
                               const Constants& c);

// Same for stage r >= 2: edges are (tuple index, vertex) pairs; stage k-1
// keeps everything.
struct HrFilterStats {
  std::vector<std::pair<uint32_t, uint32_t>> kept;  // (tuple idx, vertex id)
  uint64_t total = 0;
  uint64_t removed = 0;
};
HrFilterStats friendly_hr_filter(const LeftGraph& left,
                                 const std::vector<RTuple>& j_tuples,
                                 const std::vector<uint32_t>& b_next,
                                 const std::vector<Bitset>& b_masks,
                                 const Constants& c, uint32_t r);

// Drives one packing attempt over a fixed core and absorber. Stage methods
// throw StageFailure; everything is deterministic given the injected pieces,
// which is what makes failure certificates re-checkable.
class PackingPipeline {
 public:
  PackingPipeline(const Tournament& t, const VertexOrder& order,
                  const Constants& c);

  const LeftGraph& left() const { return left_; }
  const Constants& constants() const { return c_; }

  void select_canonical_a_star();
  void select_random_a_star(Rng& rng);
  void use_a_star(std::vector<std::vector<uint32_t>> a_star);
  const std::vector<std::vector<uint32_t>>& a_star() const { return a_star_; }

  AbsorberBuildResult build_absorber_stage(Rng& rng, uint32_t retries = 0);
  void use_absorber(Absorber absorber);
  const Absorber& absorber() const { return absorber_; }

  // r = 1 for the vertex-vertex stage, 2..k-1 for tuple-vertex stages.
  StageGraph stage_graph(uint32_t r) const;

  void build_p2_stage(bool verify_extendability = true);
  void extend_stage(bool verify_extendability = true);

  uint32_t current_r() const { return set_valid_ ? set_.r : 0; }
  const PerfectRSet& perfect_set() const;
  std::vector<RTuple> cliques() const;

  nlohmann::json& trace() { return trace_; }

  std::vector<uint32_t> b_vertices(uint32_t part) const;

 private:
  void require_a_star() const;
  void require_absorber() const;
  void verify_extendable(const PerfectRSet& s) const;

  const Tournament& t_;
  Constants c_;
  LeftGraph left_;
  std::vector<std::vector<uint32_t>> a_star_;
  std::vector<Bitset> a_star_masks_;
  bool a_star_set_ = false;
  Absorber absorber_;
  bool absorber_set_ = false;
  std::vector<std::vector<uint32_t>> b_sets_;
  std::vector<Bitset> b_masks_;
  PerfectRSet set_;
  bool set_valid_ = false;
  nlohmann::json trace_;
};

// Whole pipeline with retries: canonical core first, then re-randomized
// cores and absorbers on later attempts. Never fabricates a packing; a
// returned success has passed verify_packing.
PackingResult find_clique_packing(const Tournament& t, const VertexOrder& order,
                                  const Constants& c, uint64_t seed,
                                  uint32_t retries = 20,
                                  bool verify_extendability = true);

// Certificate check: tuples disjoint, part-ordered transversals, all pairs
// left-adjacent.
bool verify_packing(const LeftGraph& left, const std::vector<RTuple>& cliques);

// Rebuilds the named stage graph from the recorded core and absorber and
// confirms the reported set actually violates Hall's condition there.
bool verify_hall_report(const Tournament& t, const VertexOrder& order,
                        const Constants& c,
                        const std::vector<std::vector<uint32_t>>& a_star,
                        const Absorber& absorber, const HallReport& report);

}  // namespace tfas
