#include "movesense/search/abms.hpp"

#include <algorithm>

namespace movesense::search {

using chess::Board;
using chess::Color;

double leaf_value(const MoveEvaluator& evaluator, const Board& before, const Board& after, Color root_color) {
    const double v = evaluator.goodness(before, after);
    return before.side_to_move == root_color ? v : 1.0 - v;
}

ChessMoveTree::ChessMoveTree(const MoveEvaluator& evaluator, const Board& root,
                             std::span<const chess::PositionKey> history)
    : evaluator_(evaluator), root_color_(root.side_to_move), path_(history.begin(), history.end()) {
    const auto key = chess::position_key(root);
    if (path_.empty() || path_.back() != key) path_.push_back(key);
}

std::optional<double> ChessMoveTree::terminal_value(const Node& node) {
    const auto status = chess::game_status(node.board, path_);
    if (!status.is_terminal()) return std::nullopt;
    if (status.winner) return *status.winner == root_color_ ? kRootWins : kRootLoses;
    return kDrawScore;
}

double ChessMoveTree::leaf_value(const Node& parent, const Node& node) const {
    return search::leaf_value(evaluator_, parent.board, node.board, root_color_);
}

void ChessMoveTree::children(const Node& node, std::vector<Node>& out) const {
    out.clear();
    for (const auto& m : chess::legal_moves(node.board)) out.push_back({chess::make_move(node.board, m), m});
}

void ChessMoveTree::enter(const Node& node) {
    path_.push_back(chess::position_key(node.board));
}

void ChessMoveTree::leave() {
    path_.pop_back();
}

SearchResult abms_search(const Board& root, const SearchConfig& config,
                         std::span<const chess::PositionKey> history) {
    if (config.depth < 1) throw std::invalid_argument("search depth must be >= 1");
    if (!config.evaluator) throw std::invalid_argument("search needs an evaluator");
    if (!chess::has_legal_move(root)) throw NoLegalMoves();

    ChessMoveTree tree(*config.evaluator, root, history);
    AlphaBeta<ChessMoveTree> search(tree);
    const ChessMoveTree::Node root_node{root, {}};
    const auto result = search.search_root(root_node, config.depth);

    std::vector<ChessMoveTree::Node> kids;
    tree.children(root_node, kids);
    return {kids[*result.best_index].move, result.value, result.stats.nodes_visited,
            result.stats.leaf_evaluations, result.stats.pruned};
}

std::vector<ScoredMove> rank_moves(const Board& root, const SearchConfig& config,
                                   std::span<const chess::PositionKey> history) {
    if (config.depth < 1) throw std::invalid_argument("search depth must be >= 1");
    if (!config.evaluator) throw std::invalid_argument("search needs an evaluator");
    if (!chess::has_legal_move(root)) throw NoLegalMoves();

    ChessMoveTree tree(*config.evaluator, root, history);
    AlphaBeta<ChessMoveTree> search(tree);
    const ChessMoveTree::Node root_node{root, {}};
    std::vector<ChessMoveTree::Node> kids;
    tree.children(root_node, kids);

    std::vector<ScoredMove> ranked;
    for (const auto& kid : kids) ranked.push_back({kid.move, search.search_child(root_node, kid, config.depth)});
    // children() is already in move-text order, so a stable sort keeps ties ordered.
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const ScoredMove& a, const ScoredMove& b) { return a.score > b.score; });
    return ranked;
}

} // namespace movesense::search
