#include "movesense/chess/board.hpp"

#include <array>

#include "movesense/chess/fen.hpp"

namespace movesense::chess {
namespace {

constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// 12 * 64 piece-square keys, then side, 4 castling, 8 en-passant files.
struct ZobristTable {
    std::array<std::uint64_t, 12 * 64> pieces{};
    std::uint64_t black_to_move = 0;
    std::array<std::uint64_t, 4> castling{};
    std::array<std::uint64_t, 64> en_passant{};
};

constexpr ZobristTable make_table() {
    ZobristTable t;
    std::uint64_t state = 0x5EED0F5EC7E55ULL;
    for (auto& k : t.pieces) k = splitmix64(state);
    t.black_to_move = splitmix64(state);
    for (auto& k : t.castling) k = splitmix64(state);
    for (auto& k : t.en_passant) k = splitmix64(state);
    return t;
}

constexpr ZobristTable kZobrist = make_table();

} // namespace

std::optional<Square> Board::king_square(Color c) const noexcept {
    for (int i = 0; i < 64; ++i) {
        const auto& p = placement[i];
        if (p && p->kind == PieceKind::king && p->color == c) return Square::from_index(i);
    }
    return std::nullopt;
}

int Board::piece_count() const noexcept {
    int n = 0;
    for (const auto& p : placement) n += p.has_value();
    return n;
}

Board Board::initial() {
    return parse_fen(kStartFen);
}

PositionKey position_key(const Board& board) noexcept {
    PositionKey key = 0;
    for (int i = 0; i < 64; ++i) {
        if (const auto& p = board.placement[i]) {
            const int slot = static_cast<int>(p->color) * 6 + static_cast<int>(p->kind);
            key ^= kZobrist.pieces[slot * 64 + i];
        }
    }
    if (board.side_to_move == Color::black) key ^= kZobrist.black_to_move;
    if (board.castling.white_king) key ^= kZobrist.castling[0];
    if (board.castling.white_queen) key ^= kZobrist.castling[1];
    if (board.castling.black_king) key ^= kZobrist.castling[2];
    if (board.castling.black_queen) key ^= kZobrist.castling[3];
    if (board.en_passant) key ^= kZobrist.en_passant[board.en_passant->index()];
    return key;
}

} // namespace movesense::chess
