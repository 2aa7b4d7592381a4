#include "signalgame/rng.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace signalgame::rng {

std::uint64_t Xoshiro256pp::uniform_below(std::uint64_t bound) {
  // Lemire 2019, "Fast Random Integer Generation in an Interval".
  std::uint64_t x = next();
  __uint128_t m = static_cast<__uint128_t>(x) * bound;
  std::uint64_t l = static_cast<std::uint64_t>(m);
  if (l < bound) {
    std::uint64_t t = -bound % bound;
    while (l < t) {
      x = next();
      m = static_cast<__uint128_t>(x) * bound;
      l = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::vector<int> sample_without_replacement(int n, int k, Xoshiro256pp& gen) {
  if (n < 0 || k < 0 || k > n)
    throw std::invalid_argument("sample_without_replacement: need 0 <= k <= n");
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  partial_shuffle(pool, static_cast<std::size_t>(k), gen);
  pool.resize(static_cast<std::size_t>(k));
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace signalgame::rng
