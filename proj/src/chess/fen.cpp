#include "movesense/chess/fen.hpp"

#include <charconv>
#include <sstream>
#include <vector>

namespace movesense::chess {
namespace {

std::vector<std::string_view> split_fields(std::string_view text) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
        if (pos >= text.size()) break;
        std::size_t end = pos;
        while (end < text.size() && text[end] != ' ' && text[end] != '\t') ++end;
        fields.push_back(text.substr(pos, end - pos));
        pos = end;
    }
    return fields;
}

int parse_int(std::string_view s, int field) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw InvalidFen(field, "expected an integer, got '" + std::string(s) + "'");
    return value;
}

void parse_placement(std::string_view field, Board& board) {
    int rank = 7;
    int file = 0;
    for (char c : field) {
        if (c == '/') {
            if (file != 8) throw InvalidFen(0, "rank length is not 8");
            --rank;
            file = 0;
            if (rank < 0) throw InvalidFen(0, "more than 8 ranks");
        } else if (c >= '1' && c <= '8') {
            file += c - '0';
            if (file > 8) throw InvalidFen(0, "rank length is not 8");
        } else {
            auto piece = piece_from_letter(c);
            if (!piece) throw InvalidFen(0, std::string("invalid piece letter '") + c + "'");
            if (file >= 8) throw InvalidFen(0, "rank length is not 8");
            board.at(Square(file, rank)) = piece;
            ++file;
        }
    }
    if (rank != 0) throw InvalidFen(0, "expected 8 ranks");
    if (file != 8) throw InvalidFen(0, "rank length is not 8");
}

bool holds(const Board& b, Square sq, Color c, PieceKind k) {
    const auto& p = b.at(sq);
    return p && p->color == c && p->kind == k;
}

} // namespace

Board parse_fen(std::string_view text) {
    if (text == "startpos") text = kStartFen;
    const auto fields = split_fields(text);
    if (fields.size() != 6)
        throw InvalidFen(static_cast<int>(fields.size()),
                         "expected 6 fields, found " + std::to_string(fields.size()));

    Board board;
    parse_placement(fields[0], board);

    int kings[2] = {0, 0};
    for (int i = 0; i < 64; ++i) {
        const auto& p = board.placement[i];
        if (!p) continue;
        if (p->kind == PieceKind::king) ++kings[static_cast<int>(p->color)];
        if (p->kind == PieceKind::pawn && (i / 8 == 0 || i / 8 == 7))
            throw InvalidFen(0, "pawn on back rank");
    }
    if (kings[0] != 1 || kings[1] != 1) throw InvalidFen(0, "each side needs exactly one king");

    if (fields[1] == "w") board.side_to_move = Color::white;
    else if (fields[1] == "b") board.side_to_move = Color::black;
    else throw InvalidFen(1, "side to move must be 'w' or 'b'");

    if (fields[2] != "-") {
        for (char c : fields[2]) {
            switch (c) {
            case 'K': board.castling.white_king = true; break;
            case 'Q': board.castling.white_queen = true; break;
            case 'k': board.castling.black_king = true; break;
            case 'q': board.castling.black_queen = true; break;
            default: throw InvalidFen(2, std::string("invalid castling letter '") + c + "'");
            }
        }
        const auto& cr = board.castling;
        const bool white_ok = holds(board, Square(4, 0), Color::white, PieceKind::king);
        const bool black_ok = holds(board, Square(4, 7), Color::black, PieceKind::king);
        if ((cr.white_king && !(white_ok && holds(board, Square(7, 0), Color::white, PieceKind::rook))) ||
            (cr.white_queen && !(white_ok && holds(board, Square(0, 0), Color::white, PieceKind::rook))) ||
            (cr.black_king && !(black_ok && holds(board, Square(7, 7), Color::black, PieceKind::rook))) ||
            (cr.black_queen && !(black_ok && holds(board, Square(0, 7), Color::black, PieceKind::rook))))
            throw InvalidFen(2, "castling right without king and rook on home squares");
    }

    if (fields[3] != "-") {
        auto sq = Square::parse(fields[3]);
        if (!sq) throw InvalidFen(3, "invalid en-passant square");
        const int expected_rank = board.side_to_move == Color::white ? 5 : 2;
        if (sq->rank() != expected_rank) throw InvalidFen(3, "en-passant square on wrong rank");
        if (board.at(*sq)) throw InvalidFen(3, "en-passant square is occupied");
        board.en_passant = sq;
    }

    board.halfmove_clock = parse_int(fields[4], 4);
    if (board.halfmove_clock < 0) throw InvalidFen(4, "negative halfmove clock");
    board.fullmove_number = parse_int(fields[5], 5);
    if (board.fullmove_number < 1) throw InvalidFen(5, "fullmove number must be >= 1");
    return board;
}

std::string emit_fen(const Board& board) {
    std::ostringstream out;
    for (int rank = 7; rank >= 0; --rank) {
        int empty = 0;
        for (int file = 0; file < 8; ++file) {
            const auto& p = board.at(Square(file, rank));
            if (!p) {
                ++empty;
                continue;
            }
            if (empty) out << empty;
            empty = 0;
            out << piece_letter(*p);
        }
        if (empty) out << empty;
        if (rank) out << '/';
    }
    out << ' ' << (board.side_to_move == Color::white ? 'w' : 'b') << ' ';
    const auto& cr = board.castling;
    if (!(cr.white_king || cr.white_queen || cr.black_king || cr.black_queen)) {
        out << '-';
    } else {
        if (cr.white_king) out << 'K';
        if (cr.white_queen) out << 'Q';
        if (cr.black_king) out << 'k';
        if (cr.black_queen) out << 'q';
    }
    out << ' ' << (board.en_passant ? board.en_passant->name() : "-");
    out << ' ' << board.halfmove_clock << ' ' << board.fullmove_number;
    return out.str();
}

} // namespace movesense::chess
