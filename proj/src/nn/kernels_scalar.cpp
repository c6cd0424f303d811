#include <cmath>

#include "kernels_impl.hpp"

namespace movesense::nn::kernels::detail {
namespace {

void vecmat_scalar(const float* x, std::size_t n_in, const float* w, std::size_t n_out, float* y) {
    for (std::size_t i = 0; i < n_in; ++i) {
        const float xi = x[i];
        const float* row = w + i * n_out;
        for (std::size_t o = 0; o < n_out; ++o) y[o] += xi * row[o];
    }
}

} // namespace

void elu_scalar(float* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (x[i] < 0.0f) x[i] = std::expm1(x[i]);
}

const KernelTable kScalarTable{Isa::scalar, &vecmat_scalar, &elu_scalar};

} // namespace movesense::nn::kernels::detail
