#include "movesense/chess/types.hpp"

#include <cctype>

namespace movesense::chess {

char kind_letter(PieceKind k) noexcept {
    static constexpr char kLetters[] = "pnbrqk";
    return kLetters[static_cast<int>(k)];
}

std::string_view kind_name(PieceKind k) noexcept {
    static constexpr std::string_view kNames[] = {"pawn", "knight", "bishop",
                                                  "rook", "queen",  "king"};
    return kNames[static_cast<int>(k)];
}

std::string_view color_name(Color c) noexcept {
    return c == Color::white ? "white" : "black";
}

char piece_letter(Piece p) noexcept {
    const char c = kind_letter(p.kind);
    return p.color == Color::white
               ? static_cast<char>(std::toupper(static_cast<unsigned char>(c)))
               : c;
}

std::optional<Piece> piece_from_letter(char c) noexcept {
    const Color color = std::isupper(static_cast<unsigned char>(c)) ? Color::white : Color::black;
    switch (std::tolower(static_cast<unsigned char>(c))) {
    case 'p': return Piece{color, PieceKind::pawn};
    case 'n': return Piece{color, PieceKind::knight};
    case 'b': return Piece{color, PieceKind::bishop};
    case 'r': return Piece{color, PieceKind::rook};
    case 'q': return Piece{color, PieceKind::queen};
    case 'k': return Piece{color, PieceKind::king};
    default: return std::nullopt;
    }
}

std::optional<Square> Square::parse(std::string_view text) noexcept {
    if (text.size() != 2) return std::nullopt;
    const int file = text[0] - 'a';
    const int rank = text[1] - '1';
    if (file < 0 || file > 7 || rank < 0 || rank > 7) return std::nullopt;
    return Square(file, rank);
}

std::string Square::name() const {
    return {static_cast<char>('a' + file()), static_cast<char>('1' + rank())};
}

std::string Move::text() const {
    std::string s = from.name() + to.name();
    if (promotion) s.push_back(kind_letter(*promotion));
    return s;
}

std::optional<Move> Move::parse(std::string_view text) noexcept {
    if (text.size() != 4 && text.size() != 5) return std::nullopt;
    auto from = Square::parse(text.substr(0, 2));
    auto to = Square::parse(text.substr(2, 2));
    if (!from || !to || *from == *to) return std::nullopt;
    Move m{*from, *to, std::nullopt};
    if (text.size() == 5) {
        switch (std::tolower(static_cast<unsigned char>(text[4]))) {
        case 'q': m.promotion = PieceKind::queen; break;
        case 'r': m.promotion = PieceKind::rook; break;
        case 'b': m.promotion = PieceKind::bishop; break;
        case 'n': m.promotion = PieceKind::knight; break;
        default: return std::nullopt;
        }
    }
    return m;
}

} // namespace movesense::chess
