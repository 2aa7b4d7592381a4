#include "signalgame/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "kernels_detail.hpp"

namespace signalgame::kernels {

namespace {

std::uint64_t popcount_words_scalar(const std::uint64_t* w, std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += __builtin_popcountll(w[i]);
  return total;
}

std::uint64_t and_popcount_scalar(const std::uint64_t* a,
                                  const std::uint64_t* b, std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += __builtin_popcountll(a[i] & b[i]);
  return total;
}

void axpy_scalar(double* y, const double* x, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void add_masked_scalar(double* dst, const std::uint64_t* bits, double w,
                       std::size_t nbits) {
  const std::size_t nwords = nbits / 64;
  for (std::size_t wi = 0; wi < nwords; ++wi) {
    std::uint64_t m = bits[wi];
    while (m) {
      dst[wi * 64 + static_cast<std::size_t>(__builtin_ctzll(m))] += w;
      m &= m - 1;
    }
  }
  std::uint64_t tail = nbits % 64 ? bits[nwords] & ((1ULL << (nbits % 64)) - 1)
                                  : 0;
  while (tail) {
    dst[nwords * 64 + static_cast<std::size_t>(__builtin_ctzll(tail))] += w;
    tail &= tail - 1;
  }
}

}  // namespace

namespace detail {
const Table kScalarTable = {popcount_words_scalar, and_popcount_scalar,
                            axpy_scalar, dot_scalar, add_masked_scalar};
}  // namespace detail

namespace {

[[maybe_unused]] bool avx2_available() {
#if defined(SIGNALGAME_BUILD_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

struct Dispatch {
  Backend backend;
  const detail::Table* table;

  Dispatch() {
    backend = Backend::scalar;
    table = &detail::kScalarTable;
#if defined(SIGNALGAME_BUILD_AVX2)
    if (avx2_available()) {
      backend = Backend::avx2;
      table = &detail::kAvx2Table;
    }
#endif
    if (const char* env = std::getenv("SIGNALGAME_KERNELS")) {
      if (std::strcmp(env, "scalar") == 0) {
        backend = Backend::scalar;
        table = &detail::kScalarTable;
      }
#if defined(SIGNALGAME_BUILD_AVX2)
      if (std::strcmp(env, "avx2") == 0 && avx2_available()) {
        backend = Backend::avx2;
        table = &detail::kAvx2Table;
      }
#endif
    }
  }
};

Dispatch& dispatch() {
  static Dispatch d;
  return d;
}

}  // namespace

Backend active_backend() { return dispatch().backend; }

const char* backend_name() {
  return dispatch().backend == Backend::avx2 ? "avx2" : "scalar";
}

bool set_backend(Backend b) {
  if (b == Backend::scalar) {
    dispatch().backend = Backend::scalar;
    dispatch().table = &detail::kScalarTable;
    return true;
  }
#if defined(SIGNALGAME_BUILD_AVX2)
  if (b == Backend::avx2 && avx2_available()) {
    dispatch().backend = Backend::avx2;
    dispatch().table = &detail::kAvx2Table;
    return true;
  }
#endif
  return false;
}

std::uint64_t popcount_words(const std::uint64_t* w, std::size_t nwords) {
  return dispatch().table->popcount_words(w, nwords);
}

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b,
                           std::size_t nwords) {
  return dispatch().table->and_popcount(a, b, nwords);
}

void axpy(double* y, const double* x, double a, std::size_t n) {
  dispatch().table->axpy(y, x, a, n);
}

double dot(const double* x, const double* y, std::size_t n) {
  return dispatch().table->dot(x, y, n);
}

void add_masked(double* dst, const std::uint64_t* bits, double w,
                std::size_t nbits) {
  dispatch().table->add_masked(dst, bits, w, nbits);
}

}  // namespace signalgame::kernels
