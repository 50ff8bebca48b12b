#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace clearsky {

// One master seed fans out into independent named streams so that, e.g.,
// changing the latent-sampling schedule never perturbs the data shuffle.

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

class SeedBank {
 public:
  explicit SeedBank(std::uint64_t master) : master_(master) {}

  std::uint64_t master() const { return master_; }

  /// Deterministic sub-seed for a named component.
  std::uint64_t seed_for(std::string_view name) const {
    return splitmix64(master_ ^ fnv1a64(name));
  }

  std::mt19937_64 engine(std::string_view name) const {
    return std::mt19937_64(seed_for(name));
  }

 private:
  std::uint64_t master_;
};

/// Fisher-Yates with an explicit rejection-sampled bound so shuffles are
/// identical across standard libraries and platforms.
template <typename T>
void deterministic_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::uint64_t bound = i;
    std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % bound;
    std::uint64_t r;
    do {
      r = rng();
    } while (r >= limit);
    std::swap(v[i - 1], v[r % bound]);
  }
}

/// Uniform integer in [0, bound) with the same cross-platform guarantee.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound) {
  std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

}  // namespace clearsky
