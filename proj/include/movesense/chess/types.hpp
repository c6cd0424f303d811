#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace movesense::chess {

enum class Color : std::uint8_t { white = 0, black = 1 };

constexpr Color opposite(Color c) noexcept {
    return c == Color::white ? Color::black : Color::white;
}

// Order is fixed: it is also the channel order of the bit-plane encoding.
enum class PieceKind : std::uint8_t { pawn = 0, knight, bishop, rook, queen, king };

inline constexpr std::array<PieceKind, 6> kAllKinds = {
    PieceKind::pawn, PieceKind::knight, PieceKind::bishop,
    PieceKind::rook, PieceKind::queen,  PieceKind::king};

struct Piece {
    Color color;
    PieceKind kind;

    friend constexpr bool operator==(const Piece&, const Piece&) = default;
};

/// FEN letter: uppercase for white, lowercase for black.
char piece_letter(Piece p) noexcept;
std::optional<Piece> piece_from_letter(char c) noexcept;

/// Lowercase kind letter ("pnbrqk").
char kind_letter(PieceKind k) noexcept;
std::string_view kind_name(PieceKind k) noexcept;
std::string_view color_name(Color c) noexcept;

/// A board square, a1 = 0 ... h8 = 63 (index = rank * 8 + file, both 0-based).
class Square {
public:
    constexpr Square() noexcept = default;
    constexpr Square(int file, int rank) noexcept
        : index_(static_cast<std::uint8_t>(rank * 8 + file)) {}

    static constexpr Square from_index(int index) noexcept {
        return Square(index % 8, index / 8);
    }
    /// Parses "a1".."h8"; anything else yields nullopt.
    static std::optional<Square> parse(std::string_view text) noexcept;

    constexpr int index() const noexcept { return index_; }
    constexpr int file() const noexcept { return index_ % 8; }
    constexpr int rank() const noexcept { return index_ / 8; }
    std::string name() const;

    friend constexpr auto operator<=>(const Square&, const Square&) = default;

private:
    std::uint8_t index_ = 0;
};

/// A move in canonical long-algebraic form ("e2e4", "e7e8q").
struct Move {
    Square from;
    Square to;
    std::optional<PieceKind> promotion;

    std::string text() const;
    /// Parses canonical text. Uppercase promotion letters are accepted.
    static std::optional<Move> parse(std::string_view text) noexcept;

    friend bool operator==(const Move&, const Move&) = default;
};

} // namespace movesense::chess
