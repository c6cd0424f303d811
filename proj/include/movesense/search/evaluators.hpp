#pragma once

#include <memory>
#include <string>

#include "movesense/chess/board.hpp"
#include "movesense/nn/weights.hpp"

namespace movesense::search {

/// Scores a transition (before -> after) as the probability that the move is
/// good for its mover (the side to move in `before`). Implementations are
/// immutable and safe to share between threads.
class MoveEvaluator {
public:
    virtual ~MoveEvaluator() = default;
    virtual double goodness(const chess::Board& before, const chess::Board& after) const = 0;
    virtual std::string name() const = 0;
};

class ConstantEvaluator final : public MoveEvaluator {
public:
    explicit ConstantEvaluator(double value = 0.5) : value_(value) {}
    double goodness(const chess::Board&, const chess::Board&) const override { return value_; }
    std::string name() const override { return "constant"; }

private:
    double value_;
};

/// 1 / (1 + exp(-delta / 3)), delta = change in (mover material - opponent material).
class MaterialDeltaEvaluator final : public MoveEvaluator {
public:
    static int material_delta(const chess::Board& before, const chess::Board& after) noexcept;
    double goodness(const chess::Board& before, const chess::Board& after) const override;
    std::string name() const override { return "material"; }
};

/// G output of the evaluation network on the stacked pair.
class NeuralEvaluator final : public MoveEvaluator {
public:
    explicit NeuralEvaluator(std::shared_ptr<const nn::NetworkWeights> weights);
    double goodness(const chess::Board& before, const chess::Board& after) const override;
    std::string name() const override { return "neural"; }

private:
    std::shared_ptr<const nn::NetworkWeights> weights_;
};

} // namespace movesense::search
