#include "movesense/search/evaluators.hpp"

#include <cmath>
#include <stdexcept>

#include "movesense/encoding/planes.hpp"
#include "movesense/nn/network.hpp"

namespace movesense::search {

using chess::Board;

int MaterialDeltaEvaluator::material_delta(const Board& before, const Board& after) noexcept {
    const auto mover = before.side_to_move;
    const auto other = chess::opposite(mover);
    const int balance_before = encoding::material_score(before, mover) - encoding::material_score(before, other);
    const int balance_after = encoding::material_score(after, mover) - encoding::material_score(after, other);
    return balance_after - balance_before;
}

double MaterialDeltaEvaluator::goodness(const Board& before, const Board& after) const {
    const double delta = material_delta(before, after);
    return 1.0 / (1.0 + std::exp(-delta / 3.0));
}

NeuralEvaluator::NeuralEvaluator(std::shared_ptr<const nn::NetworkWeights> weights)
    : weights_(std::move(weights)) {
    if (!weights_) throw std::invalid_argument("NeuralEvaluator needs weights");
}

double NeuralEvaluator::goodness(const Board& before, const Board& after) const {
    const auto input = encoding::encode_move_pair(before, after, encoding::Validation::none);
    return nn::forward(*weights_, input).good;
}

} // namespace movesense::search
