#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "movesense/chess/types.hpp"

namespace movesense::chess {

struct CastlingRights {
    bool white_king = false;
    bool white_queen = false;
    bool black_king = false;
    bool black_queen = false;

    friend bool operator==(const CastlingRights&, const CastlingRights&) = default;
};

/// Full chess position. A plain value type; every operation on it returns a new Board.
struct Board {
    std::array<std::optional<Piece>, 64> placement{};
    Color side_to_move = Color::white;
    CastlingRights castling{};
    std::optional<Square> en_passant;
    int halfmove_clock = 0;
    int fullmove_number = 1;

    const std::optional<Piece>& at(Square sq) const noexcept { return placement[sq.index()]; }
    std::optional<Piece>& at(Square sq) noexcept { return placement[sq.index()]; }

    std::optional<Square> king_square(Color c) const noexcept;
    int piece_count() const noexcept;

    static Board initial();

    friend bool operator==(const Board&, const Board&) = default;
};

/// Repetition key: hashes placement, side to move, castling rights and
/// en-passant square. Clocks are excluded.
using PositionKey = std::uint64_t;

PositionKey position_key(const Board& board) noexcept;

} // namespace movesense::chess
