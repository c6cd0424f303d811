#include "kernels_impl.hpp"

#ifdef MOVESENSE_HAVE_NEON_KERNELS

#include <arm_neon.h>

#include <cmath>

namespace movesense::nn::kernels::detail {
namespace {

void vecmat_neon(const float* x, std::size_t n_in, const float* w, std::size_t n_out, float* y) {
    std::size_t o = 0;
    for (; o + 16 <= n_out; o += 16) {
        float32x4_t a0 = vld1q_f32(y + o);
        float32x4_t a1 = vld1q_f32(y + o + 4);
        float32x4_t a2 = vld1q_f32(y + o + 8);
        float32x4_t a3 = vld1q_f32(y + o + 12);
        const float* col = w + o;
        for (std::size_t i = 0; i < n_in; ++i, col += n_out) {
            const float32x4_t xi = vdupq_n_f32(x[i]);
            a0 = vfmaq_f32(a0, xi, vld1q_f32(col));
            a1 = vfmaq_f32(a1, xi, vld1q_f32(col + 4));
            a2 = vfmaq_f32(a2, xi, vld1q_f32(col + 8));
            a3 = vfmaq_f32(a3, xi, vld1q_f32(col + 12));
        }
        vst1q_f32(y + o, a0);
        vst1q_f32(y + o + 4, a1);
        vst1q_f32(y + o + 8, a2);
        vst1q_f32(y + o + 12, a3);
    }
    for (; o + 4 <= n_out; o += 4) {
        float32x4_t acc = vld1q_f32(y + o);
        const float* col = w + o;
        for (std::size_t i = 0; i < n_in; ++i, col += n_out) acc = vfmaq_f32(acc, vdupq_n_f32(x[i]), vld1q_f32(col));
        vst1q_f32(y + o, acc);
    }
    for (; o < n_out; ++o) {
        float acc = y[o];
        for (std::size_t i = 0; i < n_in; ++i) acc = std::fma(x[i], w[i * n_out + o], acc);
        y[o] = acc;
    }
}

} // namespace

const KernelTable kNeonTable{Isa::neon, &vecmat_neon, &elu_scalar};

} // namespace movesense::nn::kernels::detail

#endif
