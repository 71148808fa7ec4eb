#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "part_layout.hpp"
#include "rng.hpp"

namespace tfas {

// Orientation of a complete k-partite graph. Every cross-part pair carries
// exactly one directed edge; same-part pairs carry none. Immutable after
// construction, safe to share across threads.
class Tournament {
 public:
  // All parts of size n, each cross-pair direction a fair coin from `seed`.
  static Tournament sample_random(uint32_t n, uint32_t k, uint64_t seed);

  // Random orientation of the complete k-partite graph on `total` vertices
  // with parts as equal as possible, larger parts first.
  static Tournament sample_turan(uint32_t total, uint32_t k, uint64_t seed);

  // Orientation bits in canonical cross-pair order (see cross_pairs()).
  static Tournament from_pair_bits(std::vector<uint32_t> part_sizes,
                                   const std::vector<bool>& bits);

  const PartLayout& layout() const { return layout_; }
  uint32_t vertices() const { return layout_.vertices(); }
  uint32_t parts() const { return layout_.parts(); }

  // Directed edge u -> v present?
  bool has_edge(uint32_t u, uint32_t v) const { return out_[u].test(v); }

  const Bitset& out_row(uint32_t v) const { return out_[v]; }
  const Bitset& in_row(uint32_t v) const { return in_[v]; }

  uint32_t out_degree(uint32_t v) const {
    return static_cast<uint32_t>(out_[v].count());
  }

  // Out- or in-neighbors of v inside one part. part == part(v) gives the
  // empty set (no same-part edges exist).
  Bitset neighbors(uint32_t v, bool out, uint32_t part) const;

  // Drops the last-id vertex of every oversized part; requires part sizes to
  // differ by at most 1.
  Tournament reduce_to_equal_parts() const;

  // Canonical enumeration of cross-part pairs (i, j), i < j, row-major.
  // Serialized orientation bits follow this order.
  std::vector<std::pair<uint32_t, uint32_t>> cross_pairs() const;
  uint64_t cross_pair_count() const;

  // Binary format: "KPT1", k (u32 LE), part sizes (u32 LE each), then the
  // cross-pair orientation bits packed LSB-first, padded to a byte boundary.
  std::vector<uint8_t> serialize() const;
  static Tournament deserialize(const uint8_t* data, size_t len);
  static Tournament deserialize(const std::vector<uint8_t>& bytes) {
    return deserialize(bytes.data(), bytes.size());
  }

  void write_file(const std::string& path) const;
  static Tournament read_file(const std::string& path);

  // Debug mirror of the binary format.
  nlohmann::json to_json() const;
  static Tournament from_json(const nlohmann::json& j);

  bool operator==(const Tournament& o) const {
    return layout_ == o.layout_ && out_ == o.out_;
  }

 private:
  Tournament(PartLayout layout) : layout_(std::move(layout)) {
    out_.assign(layout_.vertices(), Bitset(layout_.vertices()));
    in_.assign(layout_.vertices(), Bitset(layout_.vertices()));
  }

  void add_edge(uint32_t u, uint32_t v) {
    out_[u].set(v);
    in_[v].set(u);
  }

  static Tournament generate(PartLayout layout, uint64_t seed);

  PartLayout layout_;
  std::vector<Bitset> out_;
  std::vector<Bitset> in_;
};

}  // namespace tfas
