#pragma once

#include <cstdint>
#include <vector>

#include "bits.hpp"
#include "error.hpp"

namespace tfas {

// Vertex classes with contiguous global ids: part p owns
// [offset(p), offset(p) + size(p)).
class PartLayout {
 public:
  PartLayout() = default;

  explicit PartLayout(std::vector<uint32_t> sizes) : sizes_(std::move(sizes)) {
    require(sizes_.size() >= 2, ErrorKind::parameter,
            "need at least 2 parts, got " + std::to_string(sizes_.size()));
    offsets_.reserve(sizes_.size());
    uint32_t off = 0;
    for (uint32_t s : sizes_) {
      require(s >= 1, ErrorKind::parameter, "part sizes must be positive");
      offsets_.push_back(off);
      off += s;
    }
    total_ = off;
    part_of_.resize(total_);
    masks_.assign(sizes_.size(), Bitset(total_));
    for (uint32_t p = 0; p < sizes_.size(); ++p) {
      for (uint32_t v = offsets_[p]; v < offsets_[p] + sizes_[p]; ++v) {
        part_of_[v] = p;
        masks_[p].set(v);
      }
    }
  }

  uint32_t parts() const { return static_cast<uint32_t>(sizes_.size()); }
  uint32_t vertices() const { return total_; }
  uint32_t size(uint32_t p) const { return sizes_[p]; }
  uint32_t offset(uint32_t p) const { return offsets_[p]; }
  uint32_t part_of(uint32_t v) const { return part_of_[v]; }
  const std::vector<uint32_t>& sizes() const { return sizes_; }
  const Bitset& mask(uint32_t p) const { return masks_[p]; }

  bool valid_vertex(uint32_t v) const { return v < total_; }

  uint32_t min_part_size() const {
    uint32_t s = sizes_[0];
    for (uint32_t x : sizes_) s = std::min(s, x);
    return s;
  }

  std::vector<uint32_t> part_vertices(uint32_t p) const {
    std::vector<uint32_t> out(sizes_[p]);
    for (uint32_t i = 0; i < sizes_[p]; ++i) out[i] = offsets_[p] + i;
    return out;
  }

  bool operator==(const PartLayout& o) const { return sizes_ == o.sizes_; }

 private:
  std::vector<uint32_t> sizes_;
  std::vector<uint32_t> offsets_;
  std::vector<uint32_t> part_of_;
  std::vector<Bitset> masks_;
  uint32_t total_ = 0;
};

}  // namespace tfas
