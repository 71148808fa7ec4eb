#include "tournament.hpp"

#include <algorithm>
#include <fstream>

namespace tfas {

namespace {

constexpr char kMagic[4] = {'K', 'P', 'T', '1'};

void put_u32(std::vector<uint8_t>& out, uint32_t x) {
  out.push_back(static_cast<uint8_t>(x & 0xff));
  out.push_back(static_cast<uint8_t>((x >> 8) & 0xff));
  out.push_back(static_cast<uint8_t>((x >> 16) & 0xff));
  out.push_back(static_cast<uint8_t>((x >> 24) & 0xff));
}

uint32_t get_u32(const uint8_t* data, size_t len, size_t& off) {
  if (off + 4 > len) {
    fail(ErrorKind::parse,
         "truncated stream: need 4 bytes at offset " + std::to_string(off) +
             ", have " + std::to_string(len - off));
  }
  uint32_t x = static_cast<uint32_t>(data[off]) |
               (static_cast<uint32_t>(data[off + 1]) << 8) |
               (static_cast<uint32_t>(data[off + 2]) << 16) |
               (static_cast<uint32_t>(data[off + 3]) << 24);
  off += 4;
  return x;
}

}  // namespace

Tournament Tournament::generate(PartLayout layout, uint64_t seed) {
  Tournament t(std::move(layout));
  Rng rng(seed);
  const uint32_t n = t.vertices();
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t j = i + 1; j < n; ++j) {
      if (t.layout_.part_of(i) == t.layout_.part_of(j)) continue;
      if (rng.coin()) {
        t.add_edge(i, j);
      } else {
        t.add_edge(j, i);
      }
    }
  }
  return t;
}

Tournament Tournament::sample_random(uint32_t n, uint32_t k, uint64_t seed) {
  require(n >= 1, ErrorKind::parameter, "part size must be >= 1");
  require(k >= 2, ErrorKind::parameter, "need k >= 2 parts");
  return generate(PartLayout(std::vector<uint32_t>(k, n)), seed);
}

Tournament Tournament::sample_turan(uint32_t total, uint32_t k, uint64_t seed) {
  require(k >= 2, ErrorKind::parameter, "need k >= 2 parts");
  require(total >= k, ErrorKind::parameter,
          "need at least one vertex per part");
  uint32_t base = total / k;
  uint32_t big = total % k;
  std::vector<uint32_t> sizes(k, base);
  for (uint32_t p = 0; p < big; ++p) sizes[p] = base + 1;  // larger parts first
  return generate(PartLayout(std::move(sizes)), seed);
}

Tournament Tournament::from_pair_bits(std::vector<uint32_t> part_sizes,
                                      const std::vector<bool>& bits) {
  Tournament t((PartLayout(std::move(part_sizes))));
  size_t idx = 0;
  const uint32_t n = t.vertices();
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t j = i + 1; j < n; ++j) {
      if (t.layout_.part_of(i) == t.layout_.part_of(j)) continue;
      require(idx < bits.size(), ErrorKind::parameter,
              "orientation bit vector too short");
      if (bits[idx++]) {
        t.add_edge(i, j);
      } else {
        t.add_edge(j, i);
      }
    }
  }
  require(idx == bits.size(), ErrorKind::parameter,
          "orientation bit vector too long");
  return t;
}

Bitset Tournament::neighbors(uint32_t v, bool out, uint32_t part) const {
  require(layout_.valid_vertex(v), ErrorKind::parameter, "vertex out of range");
  require(part < parts(), ErrorKind::parameter, "part index out of range");
  Bitset r = out ? out_[v] : in_[v];
  r &= layout_.mask(part);
  return r;
}

Tournament Tournament::reduce_to_equal_parts() const {
  const uint32_t lo = layout_.min_part_size();
  uint32_t hi = lo;
  for (uint32_t s : layout_.sizes()) hi = std::max(hi, s);
  require(hi - lo <= 1, ErrorKind::parameter,
          "part sizes differ by more than 1");
  if (hi == lo) return *this;

  // Keep the first `lo` ids of every part; the removed vertex of each
  // oversized part is its last id.
  std::vector<uint32_t> keep;
  keep.reserve(lo * parts());
  for (uint32_t p = 0; p < parts(); ++p) {
    for (uint32_t i = 0; i < lo; ++i) keep.push_back(layout_.offset(p) + i);
  }
  Tournament t((PartLayout(std::vector<uint32_t>(parts(), lo))));
  for (uint32_t a = 0; a < keep.size(); ++a) {
    for (uint32_t b = 0; b < keep.size(); ++b) {
      if (has_edge(keep[a], keep[b])) t.add_edge(a, b);
    }
  }
  return t;
}

std::vector<std::pair<uint32_t, uint32_t>> Tournament::cross_pairs() const {
  std::vector<std::pair<uint32_t, uint32_t>> out;
  const uint32_t n = vertices();
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t j = i + 1; j < n; ++j) {
      if (layout_.part_of(i) != layout_.part_of(j)) out.emplace_back(i, j);
    }
  }
  return out;
}

uint64_t Tournament::cross_pair_count() const {
  uint64_t total = static_cast<uint64_t>(vertices()) * (vertices() - 1) / 2;
  for (uint32_t s : layout_.sizes()) {
    total -= static_cast<uint64_t>(s) * (s - 1) / 2;
  }
  return total;
}

std::vector<uint8_t> Tournament::serialize() const {
  std::vector<uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  put_u32(out, parts());
  for (uint32_t s : layout_.sizes()) put_u32(out, s);
  uint64_t bit = 0;
  out.resize(out.size() + (cross_pair_count() + 7) / 8, 0);
  uint8_t* payload = out.data() + 8 + 4ull * parts();
  const uint32_t n = vertices();
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t j = i + 1; j < n; ++j) {
      if (layout_.part_of(i) == layout_.part_of(j)) continue;
      if (has_edge(i, j)) payload[bit / 8] |= uint8_t(1u << (bit % 8));
      ++bit;
    }
  }
  return out;
}

Tournament Tournament::deserialize(const uint8_t* data, size_t len) {
  size_t off = 0;
  if (len < 4 || !std::equal(kMagic, kMagic + 4, data)) {
    fail(ErrorKind::parse, "bad magic at byte 0 (want KPT1)");
  }
  off = 4;
  uint32_t k = get_u32(data, len, off);
  if (k < 2 || k > (1u << 20)) {
    fail(ErrorKind::parse, "implausible part count at byte 4");
  }
  std::vector<uint32_t> sizes(k);
  for (uint32_t p = 0; p < k; ++p) {
    sizes[p] = get_u32(data, len, off);
    if (sizes[p] == 0) {
      fail(ErrorKind::parse,
           "zero part size at byte " + std::to_string(off - 4));
    }
  }
  Tournament t((PartLayout(std::move(sizes))));
  const uint64_t nbits = t.cross_pair_count();
  const size_t need = static_cast<size_t>((nbits + 7) / 8);
  if (len - off != need) {
    fail(ErrorKind::parse, "inconsistent bit payload at byte " +
                               std::to_string(off) + ": expected " +
                               std::to_string(need) + " bytes, have " +
                               std::to_string(len - off));
  }
  const uint8_t* payload = data + off;
  // Trailing pad bits must be zero; anything else is corruption.
  for (uint64_t b = nbits; b < need * 8ull; ++b) {
    if (payload[b / 8] & (1u << (b % 8))) {
      fail(ErrorKind::parse, "nonzero padding bit " + std::to_string(b));
    }
  }
  uint64_t bit = 0;
  const uint32_t n = t.vertices();
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t j = i + 1; j < n; ++j) {
      if (t.layout_.part_of(i) == t.layout_.part_of(j)) continue;
      if (payload[bit / 8] & (1u << (bit % 8))) {
        t.add_edge(i, j);
      } else {
        t.add_edge(j, i);
      }
      ++bit;
    }
  }
  return t;
}

void Tournament::write_file(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  require(f.good(), ErrorKind::io, "cannot open for writing: " + path);
  auto bytes = serialize();
  f.write(reinterpret_cast<const char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  require(f.good(), ErrorKind::io, "write failed: " + path);
}

Tournament Tournament::read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  require(f.good(), ErrorKind::io, "cannot open: " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                             std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

nlohmann::json Tournament::to_json() const {
  std::string bits;
  bits.reserve(cross_pair_count());
  for (auto [i, j] : cross_pairs()) bits.push_back(has_edge(i, j) ? '1' : '0');
  return nlohmann::json{{"format", "kpt"},
                        {"k", parts()},
                        {"part_sizes", layout_.sizes()},
                        {"orientation_bits", bits}};
}

Tournament Tournament::from_json(const nlohmann::json& j) {
  try {
    std::vector<uint32_t> sizes =
        j.at("part_sizes").get<std::vector<uint32_t>>();
    const std::string& bits = j.at("orientation_bits").get_ref<const std::string&>();
    if (j.contains("k") && j.at("k").get<uint32_t>() != sizes.size()) {
      fail(ErrorKind::parse, "k does not match part_sizes length");
    }
    std::vector<bool> bv;
    bv.reserve(bits.size());
    for (char c : bits) {
      if (c != '0' && c != '1') fail(ErrorKind::parse, "bad orientation bit");
      bv.push_back(c == '1');
    }
    return from_pair_bits(std::move(sizes), bv);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse, std::string("bad tournament json: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::parameter) {
      fail(ErrorKind::parse, std::string("bad tournament json: ") + e.what());
    }
    throw;
  }
}

}  // namespace tfas
