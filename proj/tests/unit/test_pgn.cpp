#include <doctest.h>

#include "movesense/chess/fen.hpp"
#include "movesense/chess/movegen.hpp"
#include "movesense/chess/pgn.hpp"
#include "support/random_positions.hpp"

using namespace movesense::chess;

TEST_SUITE("pgn") {

TEST_CASE("comments attach to the preceding move") {
    const auto game = parse_pgn("1. e4 e5 {A solid reply} 2. Nf3");
    REQUIRE(game.moves.size() == 3);
    CHECK(game.moves[0].move.text() == "e2e4");
    CHECK(game.moves[1].move.text() == "e7e5");
    CHECK(game.moves[2].move.text() == "g1f3");
    CHECK_FALSE(game.moves[0].comment);
    CHECK(game.moves[1].comment == "A solid reply");
    CHECK_FALSE(game.moves[2].comment);
}

TEST_CASE("empty input") {
    const auto game = parse_pgn("");
    CHECK(game.moves.empty());
    CHECK(game.tags.empty());
}

TEST_CASE("unresolvable SAN reports the move index") {
    try {
        parse_pgn("1. e9");
        FAIL("expected UnresolvableSan");
    } catch (const UnresolvableSan& e) {
        CHECK(e.move_index() == 0);
    }
    try {
        parse_pgn("1. e4 e5 2. Nf3 Nc6 3. Bb5 a6 4. Ke3");
        FAIL("expected UnresolvableSan");
    } catch (const UnresolvableSan& e) {
        CHECK(e.move_index() == 6);
    }
}

TEST_CASE("unterminated comment") {
    CHECK_THROWS_AS(parse_pgn("1. e4 {never closed"), UnterminatedComment);
}

TEST_CASE("tags, results, NAGs, variations and glyphs") {
    const char* text = R"([Event "Casual \"game\""]
[White "A"]
[Black "B"]

{Opening remark} 1. e4 $1 e5!? (1... c5 {Sicilian} 2. Nf3) 2. Nf3 Nc6?? ; line comment
3. Bb5 a6 4. Ba4 Nf6 5. O-O Be7 1-0)";
    const auto game = parse_pgn(text);
    CHECK(game.tags.at("Event") == "Casual \"game\"");
    CHECK(game.tags.at("White") == "A");
    CHECK(game.leading_comment == "Opening remark");
    CHECK(game.skipped_variations == 1);
    CHECK(game.result == "1-0");
    REQUIRE(game.moves.size() == 10);
    CHECK(game.moves[1].move.text() == "e7e5");
    CHECK(game.moves[3].comment == " line comment");
    CHECK(game.moves[8].move.text() == "e1g1");
}

TEST_CASE("move numbers glued to SAN and FEN tag start") {
    const auto game = parse_pgn("[FEN \"4k3/8/8/8/8/8/4P3/4K3 b - - 0 1\"]\n\n1...Kd7 2.e4");
    REQUIRE(game.moves.size() == 2);
    CHECK(game.moves[0].move.text() == "e8d7");
    CHECK(game.moves[1].move.text() == "e2e4");
}

TEST_CASE("SAN resolution details") {
    const Board knights = parse_fen("4k3/8/8/8/8/8/8/1N2KN2 w - - 0 1");
    CHECK(resolve_san(knights, "Nbd2")->text() == "b1d2");
    CHECK(resolve_san(knights, "Nfd2")->text() == "f1d2");
    CHECK_FALSE(resolve_san(knights, "Nd2"));  // ambiguous

    const Board promo = parse_fen("3r1k2/4P3/8/8/8/8/8/4K3 w - - 0 1");
    CHECK(resolve_san(promo, "e8=Q+")->text() == "e7e8q");
    CHECK(resolve_san(promo, "exd8=N")->text() == "e7d8n");
    CHECK(resolve_san(promo, "exd8Q")->text() == "e7d8q");
    CHECK_FALSE(resolve_san(promo, "e8"));  // promotion piece required

    const Board castle = parse_fen("r3k2r/8/8/8/8/8/8/R3K2R b KQkq - 0 1");
    CHECK(resolve_san(castle, "O-O-O")->text() == "e8c8");
    CHECK(resolve_san(castle, "0-0")->text() == "e8g8");
}

TEST_CASE("to_san round-trips through resolve_san") {
    for (const auto& b : movesense::testing::random_positions(60, 11)) {
        for (const auto& m : legal_moves(b)) {
            const auto san = to_san(b, m);
            const auto back = resolve_san(b, san);
            REQUIRE_MESSAGE(back, san);
            CHECK(*back == m);
        }
    }
    CHECK(to_san(Board::initial(), *Move::parse("g1f3")) == "Nf3");
}

TEST_CASE("write_pgn output parses back") {
    std::vector<Move> moves;
    for (const char* m : {"f2f3", "e7e5", "g2g4", "d8h4"}) moves.push_back(*Move::parse(m));
    const auto text = write_pgn({{"White", "x"}, {"Result", "0-1"}}, Board::initial(), moves, "0-1");
    CHECK(text.find("2. g4 Qh4# 0-1") != std::string::npos);
    const auto game = parse_pgn(text);
    REQUIRE(game.moves.size() == 4);
    CHECK(game.moves[3].move == moves[3]);
    CHECK(game.result == "0-1");
}

TEST_CASE("multi-game files") {
    const auto games = parse_pgn_games("[White \"a\"]\n\n1. e4 e5 1-0\n\n[White \"b\"]\n\n1. d4 {x} *\n");
    REQUIRE(games.size() == 2);
    CHECK(games[0].tags.at("White") == "a");
    CHECK(games[0].moves.size() == 2);
    CHECK(games[1].moves[0].move.text() == "d2d4");
    CHECK(games[1].moves[0].comment == "x");
    CHECK(games[1].result == "*");
    CHECK(parse_pgn_games("  \n").empty());
}

} // TEST_SUITE
