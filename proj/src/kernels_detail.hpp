#ifndef SIGNALGAME_KERNELS_DETAIL_HPP
#define SIGNALGAME_KERNELS_DETAIL_HPP

#include <cstddef>
#include <cstdint>

namespace signalgame::kernels::detail {

struct Table {
  std::uint64_t (*popcount_words)(const std::uint64_t*, std::size_t);
  std::uint64_t (*and_popcount)(const std::uint64_t*, const std::uint64_t*,
                                std::size_t);
  void (*axpy)(double*, const double*, double, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  void (*add_masked)(double*, const std::uint64_t*, double, std::size_t);
};

extern const Table kScalarTable;

#if defined(SIGNALGAME_BUILD_AVX2)
extern const Table kAvx2Table;
#endif

}  // namespace signalgame::kernels::detail

#endif  // SIGNALGAME_KERNELS_DETAIL_HPP
