#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace movesense::search {

struct SearchStats {
    std::uint64_t nodes_visited = 0;     // every node entered, root included
    std::uint64_t leaf_evaluations = 0;  // calls to leaf_value
    std::uint64_t pruned = 0;            // siblings skipped by cutoffs
};

/// A game tree whose leaves are scored as (parent, child) pairs.
///
/// enter()/leave() bracket every non-root node visit so trees can track the
/// current path (repetition detection). children() must produce the same order
/// for the same node; that order is the tie-break order at the root.
template <typename T>
concept MoveTree = requires(T& tree, const typename T::Node& node, std::vector<typename T::Node>& out) {
    { tree.terminal_value(node) } -> std::convertible_to<std::optional<double>>;
    { tree.leaf_value(node, node) } -> std::convertible_to<double>;
    tree.children(node, out);
    tree.enter(node);
    tree.leave();
};

template <MoveTree Tree>
struct RootResult {
    std::optional<std::size_t> best_index;  // into root children
    double value = 0.0;
    SearchStats stats;
};

/// Depth-limited alpha-beta over move pairs. The root maximizes; levels alternate.
/// Leaves at depth `depth` are scored with leaf_value(parent, leaf); terminal
/// nodes at any depth below the root use terminal_value. Among equal root
/// values the first child in children() order wins.
template <MoveTree Tree>
class AlphaBeta {
public:
    using Node = typename Tree::Node;

    explicit AlphaBeta(Tree& tree) : tree_(tree) {}

    RootResult<Tree> search_root(const Node& root, int depth) {
        RootResult<Tree> result;
        stats_ = {};
        ++stats_.nodes_visited;
        std::vector<Node> kids;
        tree_.children(root, kids);
        double alpha = -kInf;
        for (std::size_t i = 0; i < kids.size(); ++i) {
            const double v = visit(root, kids[i], depth - 1, alpha, kInf, false);
            if (!result.best_index || v > alpha) {
                result.best_index = i;
                alpha = v;
            }
        }
        result.value = alpha;
        result.stats = stats_;
        return result;
    }

    /// Exact value of one root child (full window). Stats accumulate.
    double search_child(const Node& root, const Node& child, int depth) {
        return visit(root, child, depth - 1, -kInf, kInf, false);
    }

    const SearchStats& stats() const noexcept { return stats_; }

private:
    static constexpr double kInf = std::numeric_limits<double>::infinity();

    double visit(const Node& parent, const Node& node, int depth_left, double alpha, double beta,
                 bool maximizing) {
        ++stats_.nodes_visited;
        tree_.enter(node);
        struct Leave {
            Tree& t;
            ~Leave() { t.leave(); }
        } leave{tree_};

        if (auto terminal = tree_.terminal_value(node)) return *terminal;
        if (depth_left <= 0) {
            ++stats_.leaf_evaluations;
            return tree_.leaf_value(parent, node);
        }

        std::vector<Node> kids;
        tree_.children(node, kids);
        double best = maximizing ? -kInf : kInf;
        for (std::size_t i = 0; i < kids.size(); ++i) {
            const double v = visit(node, kids[i], depth_left - 1, alpha, beta, !maximizing);
            if (maximizing) {
                best = v > best ? v : best;
                alpha = best > alpha ? best : alpha;
            } else {
                best = v < best ? v : best;
                beta = best < beta ? best : beta;
            }
            if (alpha >= beta) {
                stats_.pruned += kids.size() - i - 1;
                break;
            }
        }
        return best;
    }

    Tree& tree_;
    SearchStats stats_;
};

} // namespace movesense::search
