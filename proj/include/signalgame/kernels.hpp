#ifndef SIGNALGAME_KERNELS_HPP
#define SIGNALGAME_KERNELS_HPP

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops used by the graph and LP layers, in two builds:
// a scalar reference implementation and an AVX2 variant. The active variant
// is chosen once at startup from cpuid (override with set_backend or the
// SIGNALGAME_KERNELS environment variable, value "scalar" or "avx2").
//
// Contract: integer kernels agree exactly across backends; floating-point
// kernels may differ by reassociation rounding only (equivalence tests bound
// the difference at ~1e-12 relative).

namespace signalgame::kernels {

enum class Backend { scalar, avx2 };

Backend active_backend();
const char* backend_name();

// Returns false (and leaves the dispatch table unchanged) if the requested
// backend is not available on this machine/build.
bool set_backend(Backend b);

// Total popcount of w[0..nwords).
std::uint64_t popcount_words(const std::uint64_t* w, std::size_t nwords);

// Popcount of (a & b) without materializing the intersection.
std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b,
                           std::size_t nwords);

// y[i] += a * x[i]  (simplex pivot row update).
void axpy(double* y, const double* x, double a, std::size_t n);

double dot(const double* x, const double* y, std::size_t n);

// dst[i] += w for every set bit i of bits[0..nbits); bits is LSB-first packed.
void add_masked(double* dst, const std::uint64_t* bits, double w,
                std::size_t nbits);

}  // namespace signalgame::kernels

#endif  // SIGNALGAME_KERNELS_HPP
