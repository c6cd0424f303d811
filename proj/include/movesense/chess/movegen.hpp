#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "movesense/chess/board.hpp"

namespace movesense::chess {

class IllegalMove : public std::runtime_error {
public:
    explicit IllegalMove(const std::string& move)
        : std::runtime_error("illegal move: " + move) {}
};

bool is_square_attacked(const Board& board, Square sq, Color by) noexcept;
bool in_check(const Board& board, Color c) noexcept;

/// Strictly legal moves, sorted by canonical move text.
std::vector<Move> legal_moves(const Board& board);

/// Legal moves in generation order (no sort). Appends to out.
void generate_legal(const Board& board, std::vector<Move>& out);

bool has_legal_move(const Board& board);

/// Applies a legal move; throws IllegalMove otherwise.
Board apply_move(const Board& board, const Move& move);

/// Applies a move already known to be legal. No validation.
Board make_move(const Board& board, const Move& move) noexcept;

/// Piece captured by the move, if any (including en passant).
std::optional<Piece> captured_piece(const Board& board, const Move& move) noexcept;

bool is_castling(const Board& board, const Move& move) noexcept;

inline constexpr int kDefaultPerftCap = 6;

/// Leaf count of the legal move tree at exactly depth plies.
/// Throws std::invalid_argument when depth is negative or above cap.
std::uint64_t perft(const Board& board, int depth, int cap = kDefaultPerftCap);

struct GameStatus {
    enum class Kind {
        ongoing,
        checkmate,
        stalemate,
        draw_fifty_move,
        draw_threefold,
        draw_insufficient_material,
    };

    Kind kind = Kind::ongoing;
    std::optional<Color> winner;  // set only for checkmate

    bool is_terminal() const noexcept { return kind != Kind::ongoing; }
    bool is_draw() const noexcept { return is_terminal() && kind != Kind::checkmate; }

    friend bool operator==(const GameStatus&, const GameStatus&) = default;
};

std::string to_string(GameStatus::Kind kind);

bool insufficient_material(const Board& board) noexcept;

/// history must contain the key of the current position (it counts toward threefold).
GameStatus game_status(const Board& board, std::span<const PositionKey> history);

} // namespace movesense::chess
