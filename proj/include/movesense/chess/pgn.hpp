#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "movesense/chess/board.hpp"

namespace movesense::chess {

class UnresolvableSan : public std::runtime_error {
public:
    UnresolvableSan(std::size_t move_index, const std::string& san)
        : std::runtime_error("cannot resolve SAN '" + san + "' at move index " +
                             std::to_string(move_index)),
          move_index_(move_index), san_(san) {}

    std::size_t move_index() const noexcept { return move_index_; }
    const std::string& san() const noexcept { return san_; }

private:
    std::size_t move_index_;
    std::string san_;
};

class UnterminatedComment : public std::runtime_error {
public:
    UnterminatedComment() : std::runtime_error("unterminated PGN comment") {}
};

struct PgnMove {
    Move move;
    std::string san;
    std::optional<std::string> comment;
};

struct PgnGame {
    std::map<std::string, std::string> tags;
    std::vector<PgnMove> moves;
    std::optional<std::string> leading_comment;  // comment before the first move
    std::string result;                          // "1-0", "0-1", "1/2-1/2", "*" or empty
    int skipped_variations = 0;
    Board start;  // initial position, or the position of a FEN tag
};

/// Parses one PGN game: tags, movetext, brace and semicolon comments.
/// Parenthesized variations are skipped and counted.
PgnGame parse_pgn(std::string_view text);

/// Every game in a multi-game file, in order.
std::vector<PgnGame> parse_pgn_games(std::string_view text);

/// Resolves SAN against board. Check/annotation suffixes are tolerated.
/// Returns nullopt when no unique legal move matches.
std::optional<Move> resolve_san(const Board& board, std::string_view san);

/// SAN for a legal move, with "+" / "#" suffixes.
std::string to_san(const Board& board, const Move& move);

/// Writes a single game as PGN. Tags are emitted in the order given.
std::string write_pgn(const std::vector<std::pair<std::string, std::string>>& tags,
                      const Board& start, const std::vector<Move>& moves,
                      std::string_view result);

} // namespace movesense::chess
