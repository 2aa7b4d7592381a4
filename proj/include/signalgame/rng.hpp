#ifndef SIGNALGAME_RNG_HPP
#define SIGNALGAME_RNG_HPP

#include <cstdint>
#include <string_view>
#include <vector>

// Deterministic randomness for all generators and experiments.
//
// Base generator: xoshiro256++ seeded through the splitmix64 expander.
// Independent streams are derived with a documented splitting rule:
//
//   child_seed(parent, tag, index) = mix64(mix64(parent ^ fnv1a64(tag)) + index)
//
// where mix64 is the splitmix64 finalizer. Everything below is integer
// arithmetic plus one fixed u64->double conversion, so sequences are
// bit-identical across platforms.

namespace signalgame::rng {

constexpr std::uint64_t kSplitmix64Gamma = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer (Stafford mix13 variant used by the reference code).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

// One splitmix64 step: advances state, returns the mixed output.
constexpr std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += kSplitmix64Gamma;
  return mix64(state);
}

// FNV-1a over the bytes of a tag string; used only for stream labels.
constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

constexpr std::uint64_t child_seed(std::uint64_t parent, std::string_view tag,
                                   std::uint64_t index) {
  return mix64(mix64(parent ^ fnv1a64(tag)) + index);
}

class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256pp(std::uint64_t seed) {
    // Reference seeding procedure: fill state with splitmix64 outputs.
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64_next(sm);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ULL; }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  result_type operator()() { return next(); }

  // Uniform double in [0,1) with 53 random bits; the conversion is exact.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound) via Lemire's nearly-divisionless method;
  // deterministic given the stream (no platform-dependent rejection paths).
  std::uint64_t uniform_below(std::uint64_t bound);

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

// First-k Fisher-Yates: after the call, v[0..k) is a uniform k-sample of the
// original contents (order random); the tail is the unsampled remainder.
template <class T>
void partial_shuffle(std::vector<T>& v, std::size_t k, Xoshiro256pp& gen) {
  const std::size_t n = v.size();
  if (k > n) k = n;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(gen.uniform_below(n - i));
    std::swap(v[i], v[j]);
  }
}

// Sorted uniform k-subset of {0, ..., n-1}.
std::vector<int> sample_without_replacement(int n, int k, Xoshiro256pp& gen);

}  // namespace signalgame::rng

#endif  // SIGNALGAME_RNG_HPP
