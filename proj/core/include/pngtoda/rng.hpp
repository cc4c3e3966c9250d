#pragma once

#include <cstdint>
#include <random>

namespace png {

// Independent stream for (master seed, stream index). Results depend only on
// the pair, never on thread scheduling.
inline std::mt19937_64 make_rng(std::uint64_t master, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x9e3779b9u};
  return std::mt19937_64(seq);
}

}  // namespace png
