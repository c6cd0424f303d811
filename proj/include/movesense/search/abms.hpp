#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "movesense/chess/movegen.hpp"
#include "movesense/search/alpha_beta.hpp"
#include "movesense/search/evaluators.hpp"

namespace movesense::search {

class NoLegalMoves : public std::runtime_error {
public:
    NoLegalMoves() : std::runtime_error("root position has no legal moves") {}
};

/// Ties at the root always resolve to the lexicographically least move text.
struct SearchConfig {
    int depth = 1;
    std::shared_ptr<const MoveEvaluator> evaluator;
};

struct SearchResult {
    chess::Move best_move;
    double root_score = 0.0;
    std::uint64_t nodes_visited = 0;
    std::uint64_t leaf_evaluations = 0;
    std::uint64_t pruned = 0;
};

struct ScoredMove {
    chess::Move move;
    double score = 0.0;
};

inline constexpr double kRootWins = 1.0;
inline constexpr double kRootLoses = 0.0;
inline constexpr double kDrawScore = 0.5;

/// Evaluator goodness of (before -> after) for the mover, mapped to the root's
/// scale: v when the mover is root_color, 1 - v otherwise.
double leaf_value(const MoveEvaluator& evaluator, const chess::Board& before, const chess::Board& after,
                  chess::Color root_color);

/// The chess tree searched by abms_search: nodes carry the board and the move
/// that produced it, so leaves see (prior state, state) pairs.
class ChessMoveTree {
public:
    struct Node {
        chess::Board board;
        chess::Move move;
    };

    /// history: keys of positions already played (the root's key is appended if absent).
    ChessMoveTree(const MoveEvaluator& evaluator, const chess::Board& root,
                  std::span<const chess::PositionKey> history);

    std::optional<double> terminal_value(const Node& node);
    double leaf_value(const Node& parent, const Node& node) const;
    void children(const Node& node, std::vector<Node>& out) const;
    void enter(const Node& node);
    void leave();

private:
    const MoveEvaluator& evaluator_;
    chess::Color root_color_;
    std::vector<chess::PositionKey> path_;
};

/// Alpha-beta move search to config.depth plies. Throws NoLegalMoves.
SearchResult abms_search(const chess::Board& root, const SearchConfig& config,
                         std::span<const chess::PositionKey> history = {});

/// Every root move with its exact depth-limited value, best first (ties by move text).
std::vector<ScoredMove> rank_moves(const chess::Board& root, const SearchConfig& config,
                                   std::span<const chess::PositionKey> history = {});

} // namespace movesense::search
