#pragma once

#include "movesense/nn/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define MOVESENSE_HAVE_AVX2_KERNELS 1
#endif

#if defined(__aarch64__) || defined(_M_ARM64)
#define MOVESENSE_HAVE_NEON_KERNELS 1
#endif

namespace movesense::nn::kernels::detail {

extern const KernelTable kScalarTable;

#ifdef MOVESENSE_HAVE_AVX2_KERNELS
extern const KernelTable kAvx2Table;
#endif

#ifdef MOVESENSE_HAVE_NEON_KERNELS
extern const KernelTable kNeonTable;
#endif

void elu_scalar(float* x, std::size_t n);

} // namespace movesense::nn::kernels::detail
