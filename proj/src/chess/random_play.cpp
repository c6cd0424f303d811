#include "movesense/chess/random_play.hpp"

#include <random>

#include "movesense/chess/movegen.hpp"

namespace movesense::chess {

std::vector<Board> random_positions(std::size_t count, std::uint64_t seed, int max_plies) {
    std::mt19937_64 rng(seed);
    std::vector<Board> out;
    std::vector<Move> moves;
    while (out.size() < count) {
        Board board = Board::initial();
        const int plies = std::uniform_int_distribution<int>(0, max_plies)(rng);
        for (int i = 0; i < plies; ++i) {
            moves = legal_moves(board);
            if (moves.empty()) break;
            board = make_move(board, moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)]);
        }
        if (has_legal_move(board)) out.push_back(board);
    }
    return out;
}

} // namespace movesense::chess
