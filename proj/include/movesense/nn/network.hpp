#pragma once

#include <array>
#include <stdexcept>

#include "movesense/encoding/planes.hpp"
#include "movesense/nn/kernels.hpp"
#include "movesense/nn/weights.hpp"

namespace movesense::nn {

/// Softmax output: probability the move is good (G) or bad (B) for its mover.
struct EvalOutput {
    double good = 0.5;
    double bad = 0.5;
};

class NonFiniteActivation : public std::runtime_error {
public:
    NonFiniteActivation() : std::runtime_error("non-finite activation (corrupt weights?)") {}
};

/// ELU with alpha = 1.
double elu(double x) noexcept;

/// Two-class softmax with max subtraction.
std::array<double, 2> softmax(double a, double b) noexcept;

/// conv5x5(same) -> elu -> conv3x3(same) -> elu -> flatten (row, col, channel)
/// -> dense 500 -> elu -> dense 200 -> elu -> dense 2 -> softmax.
/// Dropout is a training-time layer and is the identity here.
EvalOutput forward(const NetworkWeights& weights, const encoding::MoveTensor& input);

/// Same, with an explicit kernel table (used by equivalence tests).
EvalOutput forward(const NetworkWeights& weights, const encoding::MoveTensor& input,
                   const kernels::KernelTable& kt);

/// Output logits before softmax.
std::array<float, 2> logits(const NetworkWeights& weights, const encoding::MoveTensor& input,
                            const kernels::KernelTable& kt);

} // namespace movesense::nn
