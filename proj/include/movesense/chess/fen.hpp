#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "movesense/chess/board.hpp"

namespace movesense::chess {

inline constexpr std::string_view kStartFen =
    "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";

class InvalidFen : public std::runtime_error {
public:
    /// field is the 0-based FEN field index the problem was found in.
    InvalidFen(int field, const std::string& what)
        : std::runtime_error("invalid FEN (field " + std::to_string(field) + "): " + what),
          field_(field) {}

    int field() const noexcept { return field_; }

private:
    int field_;
};

/// Parses a six-field FEN. The literal "startpos" is accepted as an alias.
Board parse_fen(std::string_view text);
std::string emit_fen(const Board& board);

} // namespace movesense::chess
