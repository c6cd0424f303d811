#include "movesense/chess/movegen.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>

namespace movesense::chess {
namespace {

struct Offset {
    int df;
    int dr;
};

constexpr Offset kKnightOffsets[] = {{1, 2}, {2, 1}, {2, -1}, {1, -2},
                                     {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}};
constexpr Offset kKingOffsets[] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1},
                                   {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
constexpr Offset kRookDirs[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
constexpr Offset kBishopDirs[] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
constexpr PieceKind kPromotionKinds[] = {PieceKind::queen, PieceKind::rook,
                                         PieceKind::bishop, PieceKind::knight};

constexpr bool on_board(int file, int rank) noexcept {
    return file >= 0 && file < 8 && rank >= 0 && rank < 8;
}

bool is(const std::optional<Piece>& p, Color c, PieceKind k) noexcept {
    return p && p->color == c && p->kind == k;
}

bool slider_hits(const Board& b, Square sq, Color by, const Offset (&dirs)[4],
                 PieceKind kind) noexcept {
    for (const auto [df, dr] : dirs) {
        int f = sq.file() + df;
        int r = sq.rank() + dr;
        while (on_board(f, r)) {
            const auto& p = b.at(Square(f, r));
            if (p) {
                if (p->color == by && (p->kind == kind || p->kind == PieceKind::queen)) return true;
                break;
            }
            f += df;
            r += dr;
        }
    }
    return false;
}

void add_pawn_move(Square from, Square to, std::vector<Move>& out) {
    if (to.rank() == 0 || to.rank() == 7) {
        for (auto k : kPromotionKinds) out.push_back({from, to, k});
    } else {
        out.push_back({from, to, std::nullopt});
    }
}

void generate_pseudo(const Board& b, std::vector<Move>& out) {
    const Color us = b.side_to_move;
    const int forward = us == Color::white ? 1 : -1;
    const int start_rank = us == Color::white ? 1 : 6;

    for (int i = 0; i < 64; ++i) {
        const auto& p = b.placement[i];
        if (!p || p->color != us) continue;
        const Square from = Square::from_index(i);
        const int f = from.file();
        const int r = from.rank();

        switch (p->kind) {
        case PieceKind::pawn: {
            const int r1 = r + forward;
            if (on_board(f, r1) && !b.at(Square(f, r1))) {
                add_pawn_move(from, Square(f, r1), out);
                const int r2 = r + 2 * forward;
                if (r == start_rank && !b.at(Square(f, r2))) out.push_back({from, Square(f, r2), std::nullopt});
            }
            for (int df : {-1, 1}) {
                if (!on_board(f + df, r1)) continue;
                const Square to(f + df, r1);
                const auto& target = b.at(to);
                if ((target && target->color != us) || (!target && b.en_passant == to))
                    add_pawn_move(from, to, out);
            }
            break;
        }
        case PieceKind::knight:
        case PieceKind::king: {
            const bool knight = p->kind == PieceKind::knight;
            for (const auto [df, dr] : knight ? std::span<const Offset>(kKnightOffsets)
                                              : std::span<const Offset>(kKingOffsets)) {
                if (!on_board(f + df, r + dr)) continue;
                const Square to(f + df, r + dr);
                const auto& target = b.at(to);
                if (!target || target->color != us) out.push_back({from, to, std::nullopt});
            }
            break;
        }
        case PieceKind::bishop:
        case PieceKind::rook:
        case PieceKind::queen: {
            auto slide = [&](std::span<const Offset> dirs) {
                for (const auto [df, dr] : dirs) {
                    int tf = f + df;
                    int tr = r + dr;
                    while (on_board(tf, tr)) {
                        const Square to(tf, tr);
                        const auto& target = b.at(to);
                        if (target) {
                            if (target->color != us) out.push_back({from, to, std::nullopt});
                            break;
                        }
                        out.push_back({from, to, std::nullopt});
                        tf += df;
                        tr += dr;
                    }
                }
            };
            if (p->kind != PieceKind::bishop) slide(kRookDirs);
            if (p->kind != PieceKind::rook) slide(kBishopDirs);
            break;
        }
        }
    }

    // Castling: path empty, king not in check and not passing through attacked squares.
    const int home = us == Color::white ? 0 : 7;
    const Color them = opposite(us);
    const bool king_side = us == Color::white ? b.castling.white_king : b.castling.black_king;
    const bool queen_side = us == Color::white ? b.castling.white_queen : b.castling.black_queen;
    if ((king_side || queen_side) && is(b.at(Square(4, home)), us, PieceKind::king) &&
        !is_square_attacked(b, Square(4, home), them)) {
        if (king_side && is(b.at(Square(7, home)), us, PieceKind::rook) &&
            !b.at(Square(5, home)) && !b.at(Square(6, home)) &&
            !is_square_attacked(b, Square(5, home), them) &&
            !is_square_attacked(b, Square(6, home), them))
            out.push_back({Square(4, home), Square(6, home), std::nullopt});
        if (queen_side && is(b.at(Square(0, home)), us, PieceKind::rook) &&
            !b.at(Square(3, home)) && !b.at(Square(2, home)) && !b.at(Square(1, home)) &&
            !is_square_attacked(b, Square(3, home), them) &&
            !is_square_attacked(b, Square(2, home), them))
            out.push_back({Square(4, home), Square(2, home), std::nullopt});
    }
}

std::uint64_t perft_inner(const Board& b, int depth, std::vector<std::vector<Move>>& buffers) {
    auto& moves = buffers[depth];
    moves.clear();
    generate_legal(b, moves);
    if (depth == 1) return moves.size();
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < buffers[depth].size(); ++i)
        total += perft_inner(make_move(b, buffers[depth][i]), depth - 1, buffers);
    return total;
}

void clear_rook_right(CastlingRights& cr, Square sq) noexcept {
    switch (sq.index()) {
    case 0: cr.white_queen = false; break;
    case 7: cr.white_king = false; break;
    case 56: cr.black_queen = false; break;
    case 63: cr.black_king = false; break;
    default: break;
    }
}

// Orders exactly like comparing Move::text(): from file, from rank, to file,
// to rank, then no promotion < b < n < q < r.
int promotion_rank(const std::optional<PieceKind>& k) noexcept {
    if (!k) return 0;
    switch (*k) {
    case PieceKind::bishop: return 1;
    case PieceKind::knight: return 2;
    case PieceKind::queen: return 3;
    default: return 4;
    }
}

bool text_order_less(const Move& a, const Move& b) noexcept {
    const auto key = [](const Move& m) {
        return std::array<int, 5>{m.from.file(), m.from.rank(), m.to.file(), m.to.rank(),
                                  promotion_rank(m.promotion)};
    };
    return key(a) < key(b);
}

} // namespace

bool is_square_attacked(const Board& b, Square sq, Color by) noexcept {
    const int f = sq.file();
    const int r = sq.rank();

    // A pawn of `by` attacks sq from one rank behind (relative to its direction).
    const int pawn_rank = by == Color::white ? r - 1 : r + 1;
    for (int df : {-1, 1})
        if (on_board(f + df, pawn_rank) && is(b.at(Square(f + df, pawn_rank)), by, PieceKind::pawn))
            return true;

    for (const auto [df, dr] : kKnightOffsets)
        if (on_board(f + df, r + dr) && is(b.at(Square(f + df, r + dr)), by, PieceKind::knight))
            return true;

    for (const auto [df, dr] : kKingOffsets)
        if (on_board(f + df, r + dr) && is(b.at(Square(f + df, r + dr)), by, PieceKind::king))
            return true;

    return slider_hits(b, sq, by, kRookDirs, PieceKind::rook) ||
           slider_hits(b, sq, by, kBishopDirs, PieceKind::bishop);
}

bool in_check(const Board& b, Color c) noexcept {
    const auto king = b.king_square(c);
    return king && is_square_attacked(b, *king, opposite(c));
}

void generate_legal(const Board& b, std::vector<Move>& out) {
    const std::size_t first = out.size();
    generate_pseudo(b, out);
    const Color us = b.side_to_move;
    auto keep = std::remove_if(out.begin() + static_cast<std::ptrdiff_t>(first), out.end(),
                               [&](const Move& m) { return in_check(make_move(b, m), us); });
    out.erase(keep, out.end());
}

std::vector<Move> legal_moves(const Board& b) {
    std::vector<Move> moves;
    moves.reserve(48);
    generate_legal(b, moves);
    std::sort(moves.begin(), moves.end(), text_order_less);
    return moves;
}

bool has_legal_move(const Board& b) {
    std::vector<Move> moves;
    generate_pseudo(b, moves);
    const Color us = b.side_to_move;
    return std::any_of(moves.begin(), moves.end(),
                       [&](const Move& m) { return !in_check(make_move(b, m), us); });
}

std::optional<Piece> captured_piece(const Board& b, const Move& m) noexcept {
    if (const auto& target = b.at(m.to)) return target;
    const auto& mover = b.at(m.from);
    if (mover && mover->kind == PieceKind::pawn && m.from.file() != m.to.file())
        return b.at(Square(m.to.file(), m.from.rank()));
    return std::nullopt;
}

bool is_castling(const Board& b, const Move& m) noexcept {
    const auto& mover = b.at(m.from);
    return mover && mover->kind == PieceKind::king && std::abs(m.to.file() - m.from.file()) == 2;
}

Board make_move(const Board& b, const Move& m) noexcept {
    Board next = b;
    const Piece mover = *b.at(m.from);
    const bool capture = b.at(m.to).has_value();

    next.at(m.from).reset();
    next.en_passant.reset();

    if (mover.kind == PieceKind::pawn) {
        if (m.from.file() != m.to.file() && !capture)
            next.at(Square(m.to.file(), m.from.rank())).reset();  // en passant
        if (std::abs(m.to.rank() - m.from.rank()) == 2)
            next.en_passant = Square(m.from.file(), (m.from.rank() + m.to.rank()) / 2);
    }

    if (mover.kind == PieceKind::king) {
        if (mover.color == Color::white) {
            next.castling.white_king = next.castling.white_queen = false;
        } else {
            next.castling.black_king = next.castling.black_queen = false;
        }
        const int delta = m.to.file() - m.from.file();
        if (delta == 2 || delta == -2) {
            const int rank = m.from.rank();
            const Square rook_from(delta > 0 ? 7 : 0, rank);
            const Square rook_to(delta > 0 ? 5 : 3, rank);
            next.at(rook_to) = next.at(rook_from);
            next.at(rook_from).reset();
        }
    }
    clear_rook_right(next.castling, m.from);
    clear_rook_right(next.castling, m.to);

    next.at(m.to) = m.promotion ? Piece{mover.color, *m.promotion} : mover;

    next.halfmove_clock = (mover.kind == PieceKind::pawn || capture) ? 0 : b.halfmove_clock + 1;
    if (b.side_to_move == Color::black) ++next.fullmove_number;
    next.side_to_move = opposite(b.side_to_move);
    return next;
}

Board apply_move(const Board& b, const Move& m) {
    std::vector<Move> moves;
    generate_legal(b, moves);
    if (std::find(moves.begin(), moves.end(), m) == moves.end()) throw IllegalMove(m.text());
    return make_move(b, m);
}

std::uint64_t perft(const Board& b, int depth, int cap) {
    if (depth < 0 || depth > cap)
        throw std::invalid_argument("perft depth must be in [0, " + std::to_string(cap) + "]");
    if (depth == 0) return 1;
    std::vector<std::vector<Move>> buffers(static_cast<std::size_t>(depth) + 1);
    for (auto& buf : buffers) buf.reserve(64);
    return perft_inner(b, depth, buffers);
}

std::string to_string(GameStatus::Kind kind) {
    switch (kind) {
    case GameStatus::Kind::ongoing: return "ongoing";
    case GameStatus::Kind::checkmate: return "checkmate";
    case GameStatus::Kind::stalemate: return "stalemate";
    case GameStatus::Kind::draw_fifty_move: return "draw-fifty-move";
    case GameStatus::Kind::draw_threefold: return "draw-threefold";
    case GameStatus::Kind::draw_insufficient_material: return "draw-insufficient-material";
    }
    return "unknown";
}

bool insufficient_material(const Board& b) noexcept {
    int minors = 0;
    int knights = 0;
    int bishop_colors[2] = {0, 0};
    for (int i = 0; i < 64; ++i) {
        const auto& p = b.placement[i];
        if (!p) continue;
        switch (p->kind) {
        case PieceKind::pawn:
        case PieceKind::rook:
        case PieceKind::queen: return false;
        case PieceKind::knight: ++minors; ++knights; break;
        case PieceKind::bishop: ++minors; ++bishop_colors[(i / 8 + i % 8) % 2]; break;
        case PieceKind::king: break;
        }
    }
    if (minors <= 1) return true;
    // Only bishops, all on squares of one color.
    return knights == 0 && (bishop_colors[0] == 0 || bishop_colors[1] == 0);
}

GameStatus game_status(const Board& b, std::span<const PositionKey> history) {
    using Kind = GameStatus::Kind;
    if (!has_legal_move(b)) {
        if (in_check(b, b.side_to_move)) return {Kind::checkmate, opposite(b.side_to_move)};
        return {Kind::stalemate, std::nullopt};
    }
    if (b.halfmove_clock >= 100) return {Kind::draw_fifty_move, std::nullopt};
    const PositionKey key = position_key(b);
    if (std::count(history.begin(), history.end(), key) >= 3) return {Kind::draw_threefold, std::nullopt};
    if (insufficient_material(b)) return {Kind::draw_insufficient_material, std::nullopt};
    return {};
}

} // namespace movesense::chess
