#include "movesense/chess/pgn.hpp"

#include <cctype>
#include <sstream>

#include "movesense/chess/fen.hpp"
#include "movesense/chess/movegen.hpp"

namespace movesense::chess {
namespace {

bool is_result_token(std::string_view t) {
    return t == "1-0" || t == "0-1" || t == "1/2-1/2" || t == "*";
}

std::optional<PieceKind> san_piece(char c) {
    switch (c) {
    case 'N': return PieceKind::knight;
    case 'B': return PieceKind::bishop;
    case 'R': return PieceKind::rook;
    case 'Q': return PieceKind::queen;
    case 'K': return PieceKind::king;
    default: return std::nullopt;
    }
}

char san_letter(PieceKind k) {
    return static_cast<char>(std::toupper(static_cast<unsigned char>(kind_letter(k))));
}

bool is_space(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

class MovetextReader {
public:
    explicit MovetextReader(std::string_view text) : text_(text) {}

    bool exhausted() {
        skip_space();
        return at_end();
    }

    PgnGame read() {
        PgnGame game;
        game.start = Board::initial();
        read_tags(game);
        if (auto it = game.tags.find("FEN"); it != game.tags.end()) game.start = parse_fen(it->second);

        Board board = game.start;
        while (true) {
            skip_space();
            if (at_end()) break;
            const char c = text_[pos_];
            if (c == '{') {
                const auto close = text_.find('}', pos_ + 1);
                if (close == std::string_view::npos) throw UnterminatedComment();
                attach(game, std::string(text_.substr(pos_ + 1, close - pos_ - 1)));
                pos_ = close + 1;
            } else if (c == ';') {
                auto eol = text_.find('\n', pos_);
                if (eol == std::string_view::npos) eol = text_.size();
                attach(game, std::string(text_.substr(pos_ + 1, eol - pos_ - 1)));
                pos_ = eol;
            } else if (c == '(') {
                skip_variation();
                ++game.skipped_variations;
            } else if (c == '$') {
                ++pos_;
                while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            } else if (c == '%' && (pos_ == 0 || text_[pos_ - 1] == '\n')) {
                while (!at_end() && text_[pos_] != '\n') ++pos_;
            } else if (c == '[') {
                // A second game's tag section; single game per call.
                break;
            } else {
                std::string_view token = read_token();
                if (is_result_token(token)) {
                    game.result = std::string(token);
                    break;
                }
                // Move numbers ("12.", "12...") may be glued to the SAN that follows.
                std::size_t i = 0;
                while (i < token.size() && std::isdigit(static_cast<unsigned char>(token[i]))) ++i;
                if (i > 0 && i < token.size() && token[i] == '.') {
                    while (i < token.size() && token[i] == '.') ++i;
                    token.remove_prefix(i);
                } else if (i == token.size()) {
                    token = {};  // bare number
                }
                if (token.empty()) continue;
                const std::size_t index = game.moves.size();
                auto move = resolve_san(board, token);
                if (!move) throw UnresolvableSan(index, std::string(token));
                game.moves.push_back({*move, std::string(token), std::nullopt});
                board = make_move(board, *move);
            }
        }
        return game;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }

    void skip_space() {
        while (!at_end() && is_space(text_[pos_])) ++pos_;
    }

    std::string_view read_token() {
        const std::size_t start = pos_;
        while (!at_end() && !is_space(text_[pos_]) && text_[pos_] != '{' && text_[pos_] != '(' &&
               text_[pos_] != ')' && text_[pos_] != ';' && text_[pos_] != '$')
            ++pos_;
        if (pos_ == start) ++pos_;  // stray delimiter such as ')'
        return text_.substr(start, pos_ - start);
    }

    void skip_variation() {
        int depth = 0;
        while (!at_end()) {
            const char c = text_[pos_++];
            if (c == '{') {
                const auto close = text_.find('}', pos_);
                if (close == std::string_view::npos) throw UnterminatedComment();
                pos_ = close + 1;
            } else if (c == '(') {
                ++depth;
            } else if (c == ')') {
                if (--depth == 0) return;
            }
        }
    }

    void read_tags(PgnGame& game) {
        while (true) {
            skip_space();
            if (at_end() || text_[pos_] != '[') return;
            const auto close = find_tag_end(pos_);
            std::string_view body = text_.substr(pos_ + 1, close - pos_ - 1);
            pos_ = close + 1;

            std::size_t i = 0;
            while (i < body.size() && is_space(body[i])) ++i;
            std::size_t name_end = i;
            while (name_end < body.size() && !is_space(body[name_end]) && body[name_end] != '"') ++name_end;
            std::string name(body.substr(i, name_end - i));
            std::string value;
            const auto quote = body.find('"', name_end);
            if (quote != std::string_view::npos) {
                for (std::size_t j = quote + 1; j < body.size() && body[j] != '"'; ++j) {
                    if (body[j] == '\\' && j + 1 < body.size()) ++j;
                    value.push_back(body[j]);
                }
            }
            if (!name.empty()) game.tags[name] = value;
        }
    }

    std::size_t find_tag_end(std::size_t open) const {
        bool quoted = false;
        for (std::size_t i = open + 1; i < text_.size(); ++i) {
            if (text_[i] == '\\' && quoted) {
                ++i;
            } else if (text_[i] == '"') {
                quoted = !quoted;
            } else if (text_[i] == ']' && !quoted) {
                return i;
            }
        }
        return text_.size();
    }

    static void attach(PgnGame& game, std::string comment) {
        auto& slot = game.moves.empty() ? game.leading_comment : game.moves.back().comment;
        if (slot) {
            *slot += ' ';
            *slot += comment;
        } else {
            slot = std::move(comment);
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

std::optional<Move> resolve_san(const Board& board, std::string_view san) {
    while (!san.empty() && (san.back() == '+' || san.back() == '#' || san.back() == '!' || san.back() == '?'))
        san.remove_suffix(1);
    if (san.empty()) return std::nullopt;

    auto moves = legal_moves(board);

    if (san == "O-O" || san == "0-0" || san == "O-O-O" || san == "0-0-0") {
        const int target_file = san.size() == 3 ? 6 : 2;
        for (const auto& m : moves)
            if (is_castling(board, m) && m.to.file() == target_file) return m;
        return std::nullopt;
    }

    PieceKind kind = PieceKind::pawn;
    if (auto k = san_piece(san.front())) {
        kind = *k;
        san.remove_prefix(1);
    }

    std::optional<PieceKind> promotion;
    // Promotion suffix: "e8=Q", "e8Q", or lowercase only after '=' ("e8=q").
    if (kind == PieceKind::pawn && san.size() >= 3) {
        const char last = san.back();
        const bool after_equals = san[san.size() - 2] == '=';
        const char upper = static_cast<char>(std::toupper(static_cast<unsigned char>(last)));
        auto k = san_piece(after_equals ? upper : last);
        if (k && *k != PieceKind::king) {
            promotion = k;
            san.remove_suffix(after_equals ? 2 : 1);
        }
    }

    if (san.size() < 2) return std::nullopt;
    auto to = Square::parse(san.substr(san.size() - 2));
    if (!to) return std::nullopt;
    san.remove_suffix(2);
    if (!san.empty() && (san.back() == 'x' || san.back() == ':')) san.remove_suffix(1);

    std::optional<int> from_file;
    std::optional<int> from_rank;
    for (char c : san) {
        if (c >= 'a' && c <= 'h') from_file = c - 'a';
        else if (c >= '1' && c <= '8') from_rank = c - '1';
        else return std::nullopt;
    }

    std::optional<Move> found;
    for (const auto& m : moves) {
        const auto& p = board.at(m.from);
        if (p->kind != kind || m.to != *to || m.promotion != promotion) continue;
        if (kind == PieceKind::king && is_castling(board, m)) continue;
        if (from_file && m.from.file() != *from_file) continue;
        if (from_rank && m.from.rank() != *from_rank) continue;
        if (found) return std::nullopt;  // ambiguous
        found = m;
    }
    return found;
}

std::string to_san(const Board& board, const Move& move) {
    std::string san;
    const Piece mover = *board.at(move.from);
    if (is_castling(board, move)) {
        san = move.to.file() == 6 ? "O-O" : "O-O-O";
    } else {
        const bool capture = captured_piece(board, move).has_value();
        if (mover.kind == PieceKind::pawn) {
            if (capture) {
                san.push_back(static_cast<char>('a' + move.from.file()));
                san.push_back('x');
            }
            san += move.to.name();
            if (move.promotion) {
                san.push_back('=');
                san.push_back(san_letter(*move.promotion));
            }
        } else {
            san.push_back(san_letter(mover.kind));
            bool ambiguous = false;
            bool same_file = false;
            bool same_rank = false;
            for (const auto& other : legal_moves(board)) {
                if (other.to != move.to || other.from == move.from) continue;
                const auto& p = board.at(other.from);
                if (p->kind != mover.kind) continue;
                ambiguous = true;
                same_file |= other.from.file() == move.from.file();
                same_rank |= other.from.rank() == move.from.rank();
            }
            if (ambiguous) {
                if (!same_file) {
                    san.push_back(static_cast<char>('a' + move.from.file()));
                } else if (!same_rank) {
                    san.push_back(static_cast<char>('1' + move.from.rank()));
                } else {
                    san += move.from.name();
                }
            }
            if (capture) san.push_back('x');
            san += move.to.name();
        }
    }
    const Board next = make_move(board, move);
    if (in_check(next, next.side_to_move)) san.push_back(has_legal_move(next) ? '+' : '#');
    return san;
}

PgnGame parse_pgn(std::string_view text) {
    return MovetextReader(text).read();
}

std::vector<PgnGame> parse_pgn_games(std::string_view text) {
    MovetextReader reader(text);
    std::vector<PgnGame> games;
    while (!reader.exhausted()) games.push_back(reader.read());
    return games;
}

std::string write_pgn(const std::vector<std::pair<std::string, std::string>>& tags,
                      const Board& start, const std::vector<Move>& moves, std::string_view result) {
    std::ostringstream out;
    for (const auto& [name, value] : tags) {
        out << '[' << name << " \"";
        for (char c : value) {
            if (c == '"' || c == '\\') out << '\\';
            out << c;
        }
        out << "\"]\n";
    }
    out << '\n';

    Board board = start;
    std::string line;
    auto emit = [&](const std::string& token) {
        if (!line.empty() && line.size() + 1 + token.size() > 79) {
            out << line << '\n';
            line.clear();
        }
        if (!line.empty()) line.push_back(' ');
        line += token;
    };
    for (std::size_t i = 0; i < moves.size(); ++i) {
        if (board.side_to_move == Color::white) {
            emit(std::to_string(board.fullmove_number) + ".");
        } else if (i == 0) {
            emit(std::to_string(board.fullmove_number) + "...");
        }
        emit(to_san(board, moves[i]));
        board = apply_move(board, moves[i]);
    }
    emit(std::string(result));
    out << line << '\n';
    return out.str();
}

} // namespace movesense::chess
