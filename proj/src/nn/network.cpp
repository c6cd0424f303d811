#include "movesense/nn/network.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace movesense::nn {
namespace {

// 8x8 "same" convolution over (row, col, channel) activations, channel fastest.
void conv_same(const float* in, int in_ch, std::span<const float> kernel, int size,
               std::span<const float> bias, int out_ch, float* out, const kernels::KernelTable& kt) {
    const int pad = size / 2;
    const auto cin = static_cast<std::size_t>(in_ch);
    const auto cout = static_cast<std::size_t>(out_ch);
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            float* y = out + static_cast<std::size_t>(r * 8 + c) * cout;
            std::copy(bias.begin(), bias.end(), y);
            for (int kh = 0; kh < size; ++kh) {
                const int rr = r + kh - pad;
                if (rr < 0 || rr >= 8) continue;
                for (int kw = 0; kw < size; ++kw) {
                    const int cc = c + kw - pad;
                    if (cc < 0 || cc >= 8) continue;
                    const float* x = in + static_cast<std::size_t>(rr * 8 + cc) * cin;
                    const float* w = kernel.data() + static_cast<std::size_t>(kh * size + kw) * cin * cout;
                    kt.vecmat_accumulate(x, cin, w, cout, y);
                }
            }
        }
    }
    kt.elu_inplace(out, 64 * cout);
}

void dense(std::span<const float> x, std::span<const float> w, std::span<const float> bias,
           std::vector<float>& y, const kernels::KernelTable& kt) {
    y.assign(bias.begin(), bias.end());
    kt.vecmat_accumulate(x.data(), x.size(), w.data(), y.size(), y.data());
}

} // namespace

double elu(double x) noexcept {
    return x >= 0.0 ? x : std::expm1(x);
}

std::array<double, 2> softmax(double a, double b) noexcept {
    const double m = std::max(a, b);
    const double ea = std::exp(a - m);
    const double eb = std::exp(b - m);
    const double sum = ea + eb;
    return {ea / sum, eb / sum};
}

std::array<float, 2> logits(const NetworkWeights& weights, const encoding::MoveTensor& input,
                            const kernels::KernelTable& kt) {
    const auto& t = weights.tensors();
    const int f1 = weights.f1();
    const int f2 = weights.f2();

    std::vector<float> h1(static_cast<std::size_t>(64 * f1));
    std::vector<float> h2(static_cast<std::size_t>(64 * f2));
    conv_same(input.values.data(), encoding::kPairChannels, t.conv1_weight, kConv1Size, t.conv1_bias, f1,
              h1.data(), kt);
    conv_same(h1.data(), f1, t.conv2_weight, kConv2Size, t.conv2_bias, f2, h2.data(), kt);

    std::vector<float> d1;
    std::vector<float> d2;
    std::vector<float> out;
    dense(h2, t.fc1_weight, t.fc1_bias, d1, kt);
    kt.elu_inplace(d1.data(), d1.size());
    dense(d1, t.fc2_weight, t.fc2_bias, d2, kt);
    kt.elu_inplace(d2.data(), d2.size());
    dense(d2, t.out_weight, t.out_bias, out, kt);
    return {out[0], out[1]};
}

EvalOutput forward(const NetworkWeights& weights, const encoding::MoveTensor& input,
                   const kernels::KernelTable& kt) {
    const auto z = logits(weights, input, kt);
    if (!std::isfinite(z[0]) || !std::isfinite(z[1])) throw NonFiniteActivation();
    const auto p = softmax(z[0], z[1]);
    return {p[0], p[1]};
}

EvalOutput forward(const NetworkWeights& weights, const encoding::MoveTensor& input) {
    return forward(weights, input, kernels::active());
}

} // namespace movesense::nn
