#pragma once

#include <cstdint>
#include <random>

namespace hsk {

// splitmix64 step; used to derive independent child seeds from a master seed
// so that per-walker / per-run / per-fold streams do not depend on scheduling.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-derived substream seed: mixes (master, stream_id) into a fresh seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream_id) {
  std::uint64_t s = master;
  (void)splitmix64(s);
  s ^= 0x517cc1b727220a95ULL * (stream_id + 1);
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  return a ^ (b << 1);
}

inline std::mt19937_64 make_engine(std::uint64_t master, std::uint64_t stream_id) {
  return std::mt19937_64(derive_seed(master, stream_id));
}

}  // namespace hsk
