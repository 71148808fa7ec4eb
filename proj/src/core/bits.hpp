#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <vector>

namespace tfas {

using Bitset = boost::dynamic_bitset<uint64_t>;

inline size_t intersect_count(const Bitset& a, const Bitset& b) {
  Bitset t = a;
  t &= b;
  return t.count();
}

inline size_t intersect_count(const Bitset& a, const Bitset& b,
                              const Bitset& mask) {
  Bitset t = a;
  t &= b;
  t &= mask;
  return t.count();
}

inline std::vector<uint32_t> bitset_to_vector(const Bitset& b) {
  std::vector<uint32_t> out;
  out.reserve(b.count());
  for (auto i = b.find_first(); i != Bitset::npos; i = b.find_next(i)) {
    out.push_back(static_cast<uint32_t>(i));
  }
  return out;
}

inline Bitset vector_to_bitset(size_t universe, const std::vector<uint32_t>& v) {
  Bitset b(universe);
  for (uint32_t x : v) b.set(x);
  return b;
}

}  // namespace tfas
