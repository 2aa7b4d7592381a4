// AVX2 kernel variants. This translation unit is the only one compiled with
// -mavx2/-mfma; nothing here runs unless cpuid reported both features.

#include <immintrin.h>

#include <cstddef>
#include <cstdint>

#include "kernels_detail.hpp"

namespace signalgame::kernels::detail {

namespace {

// Mula's vectorized popcount: per-byte counts via a nibble shuffle table,
// accumulated with vpsadbw.
inline __m256i popcount_bytes(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2,
                                       3, 3, 4, 0, 1, 1, 2, 1, 2, 2, 3, 1, 2,
                                       2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0F);
  __m256i lo = _mm256_and_si256(v, low_mask);
  __m256i hi = _mm256_and_si256(_mm256_srli_epi32(v, 4), low_mask);
  return _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo),
                         _mm256_shuffle_epi8(lut, hi));
}

inline std::uint64_t hsum_epi64(__m256i v) {
  __m128i lo = _mm256_castsi256_si128(v);
  __m128i hi = _mm256_extracti128_si256(v, 1);
  __m128i s = _mm_add_epi64(lo, hi);
  return static_cast<std::uint64_t>(_mm_extract_epi64(s, 0)) +
         static_cast<std::uint64_t>(_mm_extract_epi64(s, 1));
}

std::uint64_t popcount_words_avx2(const std::uint64_t* w, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(w + i));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_bytes(v),
                                                _mm256_setzero_si256()));
  }
  std::uint64_t total = hsum_epi64(acc);
  for (; i < n; ++i) total += __builtin_popcountll(w[i]);
  return total;
}

std::uint64_t and_popcount_avx2(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i v = _mm256_and_si256(va, vb);
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_bytes(v),
                                                _mm256_setzero_si256()));
  }
  std::uint64_t total = hsum_epi64(acc);
  for (; i < n; ++i) total += __builtin_popcountll(a[i] & b[i]);
  return total;
}

void axpy_avx2(double* y, const double* x, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d y0 = _mm256_loadu_pd(y + i);
    __m256d y1 = _mm256_loadu_pd(y + i + 4);
    y0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), y0);
    y1 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i + 4), y1);
    _mm256_storeu_pd(y + i, y0);
    _mm256_storeu_pd(y + i + 4, y1);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i),
                           acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4),
                           _mm256_loadu_pd(y + i + 4), acc1);
  }
  __m256d acc = _mm256_add_pd(acc0, acc1);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

// 4-bit -> 4x64-bit lane masks for the masked add.
alignas(32) constexpr std::uint64_t kNibbleMask[16][4] = {
#define M(b) ((b) ? ~0ULL : 0ULL)
#define ROW(n) {M((n)&1), M((n)&2), M((n)&4), M((n)&8)}
    ROW(0),  ROW(1),  ROW(2),  ROW(3),  ROW(4),  ROW(5),  ROW(6),  ROW(7),
    ROW(8),  ROW(9),  ROW(10), ROW(11), ROW(12), ROW(13), ROW(14), ROW(15),
#undef ROW
#undef M
};

void add_masked_avx2(double* dst, const std::uint64_t* bits, double w,
                     std::size_t nbits) {
  const __m256d vw = _mm256_set1_pd(w);
  const std::size_t nwords = nbits / 64;
  for (std::size_t wi = 0; wi < nwords; ++wi) {
    std::uint64_t word = bits[wi];
    if (!word) continue;
    double* base = dst + wi * 64;
    for (int nib = 0; nib < 16; ++nib, word >>= 4) {
      unsigned idx = static_cast<unsigned>(word & 0xF);
      if (!idx) continue;
      __m256d mask = _mm256_load_pd(
          reinterpret_cast<const double*>(kNibbleMask[idx]));
      __m256d v = _mm256_loadu_pd(base + nib * 4);
      _mm256_storeu_pd(base + nib * 4,
                       _mm256_add_pd(v, _mm256_and_pd(mask, vw)));
    }
  }
  // Sub-word tail: scalar.
  std::uint64_t tail =
      nbits % 64 ? bits[nwords] & ((1ULL << (nbits % 64)) - 1) : 0;
  while (tail) {
    dst[nwords * 64 + static_cast<std::size_t>(__builtin_ctzll(tail))] += w;
    tail &= tail - 1;
  }
}

}  // namespace

const Table kAvx2Table = {popcount_words_avx2, and_popcount_avx2, axpy_avx2,
                          dot_avx2, add_masked_avx2};

}  // namespace signalgame::kernels::detail
