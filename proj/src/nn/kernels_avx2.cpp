// Built with -mavx2 -mfma. Only reached after the runtime CPU check in
// kernel_dispatch.cpp.

#include "kernels_impl.hpp"

#ifdef MOVESENSE_HAVE_AVX2_KERNELS

#include <immintrin.h>

namespace movesense::nn::kernels::detail {
namespace {

// Four accumulators (32 outputs) stay in registers across the whole input sweep.
void vecmat_avx2(const float* x, std::size_t n_in, const float* w, std::size_t n_out, float* y) {
    std::size_t o = 0;
    for (; o + 32 <= n_out; o += 32) {
        __m256 a0 = _mm256_loadu_ps(y + o);
        __m256 a1 = _mm256_loadu_ps(y + o + 8);
        __m256 a2 = _mm256_loadu_ps(y + o + 16);
        __m256 a3 = _mm256_loadu_ps(y + o + 24);
        const float* col = w + o;
        for (std::size_t i = 0; i < n_in; ++i, col += n_out) {
            const __m256 xi = _mm256_broadcast_ss(x + i);
            a0 = _mm256_fmadd_ps(xi, _mm256_loadu_ps(col), a0);
            a1 = _mm256_fmadd_ps(xi, _mm256_loadu_ps(col + 8), a1);
            a2 = _mm256_fmadd_ps(xi, _mm256_loadu_ps(col + 16), a2);
            a3 = _mm256_fmadd_ps(xi, _mm256_loadu_ps(col + 24), a3);
        }
        _mm256_storeu_ps(y + o, a0);
        _mm256_storeu_ps(y + o + 8, a1);
        _mm256_storeu_ps(y + o + 16, a2);
        _mm256_storeu_ps(y + o + 24, a3);
    }
    for (; o + 8 <= n_out; o += 8) {
        __m256 acc = _mm256_loadu_ps(y + o);
        const float* col = w + o;
        for (std::size_t i = 0; i < n_in; ++i, col += n_out)
            acc = _mm256_fmadd_ps(_mm256_broadcast_ss(x + i), _mm256_loadu_ps(col), acc);
        _mm256_storeu_ps(y + o, acc);
    }
    if (o < n_out) {
        alignas(32) static constexpr int kLanes[16] = {-1, -1, -1, -1, -1, -1, -1, -1, 0, 0, 0, 0, 0, 0, 0, 0};
        const __m256i mask = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(kLanes + 8 - (n_out - o)));
        __m256 acc = _mm256_maskload_ps(y + o, mask);
        const float* col = w + o;
        for (std::size_t i = 0; i < n_in; ++i, col += n_out)
            acc = _mm256_fmadd_ps(_mm256_broadcast_ss(x + i), _mm256_maskload_ps(col, mask), acc);
        _mm256_maskstore_ps(y + o, mask, acc);
    }
}

} // namespace

// ELU needs expm1 on the negative lanes only; the scalar loop is already cheap
// next to the matrix products.
const KernelTable kAvx2Table{Isa::avx2, &vecmat_avx2, &elu_scalar};

} // namespace movesense::nn::kernels::detail

#endif
