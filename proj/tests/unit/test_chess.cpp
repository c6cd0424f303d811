#include <doctest.h>

#include <algorithm>

#include "movesense/chess/fen.hpp"
#include "movesense/chess/movegen.hpp"
#include "support/random_positions.hpp"

using namespace movesense::chess;

namespace {

std::vector<std::string> texts(const std::vector<Move>& moves) {
    std::vector<std::string> out;
    for (const auto& m : moves) out.push_back(m.text());
    return out;
}

Board play(std::initializer_list<const char*> moves) {
    Board b = Board::initial();
    for (const char* m : moves) b = apply_move(b, *Move::parse(m));
    return b;
}

} // namespace

TEST_SUITE("chess") {

TEST_CASE("square and move text") {
    CHECK(Square::parse("e4")->file() == 4);
    CHECK(Square::parse("e4")->rank() == 3);
    CHECK_FALSE(Square::parse("e9"));
    CHECK_FALSE(Square::parse("i1"));
    CHECK(Move::parse("e7e8q")->promotion == PieceKind::queen);
    CHECK(Move::parse("e7e8Q")->text() == "e7e8q");
    CHECK_FALSE(Move::parse("e2e2"));
    CHECK_FALSE(Move::parse("e7e8k"));
    CHECK_FALSE(Move::parse("e2"));
}

TEST_CASE("parse_fen initial position") {
    const Board b = parse_fen("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1");
    CHECK(b.side_to_move == Color::white);
    CHECK(b.castling == CastlingRights{true, true, true, true});
    CHECK_FALSE(b.en_passant);
    CHECK(b.piece_count() == 32);
    CHECK(b.at(*Square::parse("e1")) == Piece{Color::white, PieceKind::king});
    CHECK(b.at(*Square::parse("d8")) == Piece{Color::black, PieceKind::queen});
    CHECK(parse_fen("startpos") == b);
}

TEST_CASE("emit_fen") {
    CHECK(emit_fen(Board::initial()) == kStartFen);
    CHECK(emit_fen(play({"e2e4"})) == "rnbqkbnr/pppppppp/8/8/4P3/8/PPPP1PPP/RNBQKBNR b KQkq e3 0 1");
    const std::string three = "4k3/8/8/4P3/8/8/8/4K3 b - - 0 1";
    CHECK(emit_fen(parse_fen(three)) == three);
}

TEST_CASE("parse_fen rejects malformed input with the field index") {
    auto field_of = [](const char* fen) {
        try {
            parse_fen(fen);
        } catch (const InvalidFen& e) {
            return e.field();
        }
        return -1;
    };
    CHECK(field_of("8/8/8/8/8/8/8/8 w - - 0 1") == 0);                           // no kings
    CHECK(field_of("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq -") == 4);  // 4 fields
    CHECK(field_of("rnbqkbnr/ppppxppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1") == 0);
    CHECK(field_of("rnbqkbnr/ppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1") == 0);  // 7 files
    CHECK(field_of("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNP w KQkq - 0 1") == 0);  // pawn on rank 1 ...
    CHECK(field_of("P3k3/8/8/8/8/8/8/4K3 w - - 0 1") == 0);
    CHECK(field_of("4k3/8/8/8/8/8/8/4K3 x - - 0 1") == 1);
    CHECK(field_of("4k3/8/8/8/8/8/8/4K3 w K - 0 1") == 2);  // no rook on h1
    CHECK(field_of("4k3/8/8/8/8/8/8/4K3 w - e4 0 1") == 3);
    CHECK(field_of("4k3/8/8/8/8/8/8/4K3 w - e3 0 1") == 3);  // white to move needs rank 6
    CHECK(field_of("4k3/8/8/8/8/8/8/4K3 w - - -1 1") == 4);
    CHECK(field_of("4k3/8/8/8/8/8/8/4K3 w - - 0 0") == 5);
}

TEST_CASE("legal_moves") {
    const auto start = legal_moves(Board::initial());
    CHECK(start.size() == 20);
    CHECK(start.front().text() == "a2a3");
    CHECK(std::is_sorted(start.begin(), start.end(),
                         [](const Move& a, const Move& b) { return a.text() < b.text(); }));

    const auto castle = texts(legal_moves(parse_fen("4k3/8/8/8/8/8/8/4K2R w K - 0 1")));
    CHECK(std::find(castle.begin(), castle.end(), "e1g1") != castle.end());

    CHECK(legal_moves(parse_fen("7k/5Q2/6K1/8/8/8/8/8 b - - 0 1")).empty());
}

TEST_CASE("move text order covers promotions") {
    const auto moves = texts(legal_moves(parse_fen("4k3/1P6/8/8/8/8/8/4K3 w - - 0 1")));
    CHECK(std::is_sorted(moves.begin(), moves.end()));
    CHECK(std::count_if(moves.begin(), moves.end(), [](const std::string& m) { return m.size() == 5; }) == 4);
}

TEST_CASE("castling is refused through or out of check") {
    // Black rook on f8 covers f1.
    auto through = texts(legal_moves(parse_fen("4kr2/8/8/8/8/8/8/4K2R w K - 0 1")));
    CHECK(std::find(through.begin(), through.end(), "e1g1") == through.end());
    // King in check from e8 rook.
    auto out_of = texts(legal_moves(parse_fen("k3r3/8/8/8/8/8/8/R3K2R w KQ - 0 1")));
    CHECK(std::find(out_of.begin(), out_of.end(), "e1g1") == out_of.end());
    CHECK(std::find(out_of.begin(), out_of.end(), "e1c1") == out_of.end());
    // b1 attacked does not stop queen-side castling.
    auto b_file = texts(legal_moves(parse_fen("1r2k3/8/8/8/8/8/8/R3K3 w Q - 0 1")));
    CHECK(std::find(b_file.begin(), b_file.end(), "e1c1") != b_file.end());
}

TEST_CASE("apply_move") {
    const Board start = Board::initial();
    const Board after = apply_move(start, *Move::parse("e2e4"));
    CHECK(emit_fen(after) == "rnbqkbnr/pppppppp/8/8/4P3/8/PPPP1PPP/RNBQKBNR b KQkq e3 0 1");
    CHECK(start == Board::initial());  // value semantics

    const Board castled = apply_move(parse_fen("4k3/8/8/8/8/8/8/4K2R w K - 0 1"), *Move::parse("e1g1"));
    CHECK(castled.at(*Square::parse("f1")) == Piece{Color::white, PieceKind::rook});
    CHECK_FALSE(castled.at(*Square::parse("h1")));
    CHECK(castled.at(*Square::parse("g1")) == Piece{Color::white, PieceKind::king});
    CHECK_FALSE(castled.castling.white_king);

    const Board promoted = apply_move(parse_fen("8/4P3/8/8/8/8/k7/4K3 w - - 0 1"), *Move::parse("e7e8q"));
    CHECK(promoted.at(*Square::parse("e8")) == Piece{Color::white, PieceKind::queen});
    CHECK_FALSE(promoted.at(*Square::parse("e7")));

    const Board ep = apply_move(parse_fen("4k3/8/8/3pP3/8/8/8/4K3 w - d6 0 2"), *Move::parse("e5d6"));
    CHECK_FALSE(ep.at(*Square::parse("d5")));
    CHECK(ep.at(*Square::parse("d6")) == Piece{Color::white, PieceKind::pawn});

    CHECK_THROWS_AS(apply_move(start, *Move::parse("e2e5")), IllegalMove);
    CHECK_THROWS_AS(apply_move(start, *Move::parse("e7e5")), IllegalMove);
}

TEST_CASE("clocks and rook-capture castling rights") {
    Board b = play({"g1f3", "g8f6"});
    CHECK(b.halfmove_clock == 2);
    CHECK(b.fullmove_number == 2);
    b = play({"e2e4"});
    CHECK(b.halfmove_clock == 0);

    const Board captured = apply_move(parse_fen("r3k2r/8/8/8/8/8/6B1/R3K2R w KQkq - 0 1"), *Move::parse("g2a8"));
    CHECK_FALSE(captured.castling.black_queen);
    CHECK(captured.castling.black_king);
}

TEST_CASE("perft reference counts") {
    const Board start = Board::initial();
    CHECK(perft(start, 0) == 1);
    CHECK(perft(start, 1) == 20);
    CHECK(perft(start, 2) == 400);
    CHECK(perft(start, 3) == 8902);
    CHECK_THROWS_AS(perft(start, 7), std::invalid_argument);

    // Published tables for the standard test suite positions.
    const Board kiwipete = parse_fen("r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1");
    CHECK(perft(kiwipete, 1) == 48);
    CHECK(perft(kiwipete, 2) == 2039);
    CHECK(perft(kiwipete, 3) == 97862);
    const Board pos3 = parse_fen("8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1");
    CHECK(perft(pos3, 1) == 14);
    CHECK(perft(pos3, 2) == 191);
    CHECK(perft(pos3, 3) == 2812);
    CHECK(perft(pos3, 4) == 43238);
    const Board pos4 = parse_fen("r3k2r/Pppp1ppp/1b3nbN/nP6/BBP1P3/q4N2/Pp1P2PP/R2Q1RK1 w kq - 0 1");
    CHECK(perft(pos4, 1) == 6);
    CHECK(perft(pos4, 2) == 264);
    CHECK(perft(pos4, 3) == 9467);
    const Board pos5 = parse_fen("rnbq1k1r/pp1Pbppp/2p5/8/2B5/8/PPP1NnPP/RNBQK2R w KQ - 1 8");
    CHECK(perft(pos5, 1) == 44);
    CHECK(perft(pos5, 2) == 1486);
    CHECK(perft(pos5, 3) == 62379);
}

TEST_CASE("game_status") {
    const Board mated = play({"f2f3", "e7e5", "g2g4", "d8h4"});
    const PositionKey key = position_key(mated);
    const auto status = game_status(mated, std::vector<PositionKey>{key});
    CHECK(status.kind == GameStatus::Kind::checkmate);
    CHECK(status.winner == Color::black);

    CHECK(game_status(parse_fen("7k/5Q2/6K1/8/8/8/8/8 b - - 0 1"), {}).kind == GameStatus::Kind::stalemate);

    const Board fifty = parse_fen("4k3/8/8/8/8/8/4P3/4K3 w - - 100 80");
    CHECK(game_status(fifty, {}).kind == GameStatus::Kind::draw_fifty_move);
    CHECK(game_status(parse_fen("4k3/8/8/8/8/8/4P3/4K3 w - - 99 80"), {}).kind == GameStatus::Kind::ongoing);

    CHECK(game_status(parse_fen("4k3/8/8/8/8/8/8/4K3 w - - 0 1"), {}).kind ==
          GameStatus::Kind::draw_insufficient_material);
    CHECK(insufficient_material(parse_fen("4k3/8/8/8/8/8/8/4KN2 w - - 0 1")));
    CHECK(insufficient_material(parse_fen("2b1k3/8/8/8/8/8/8/4KB2 w - - 0 1")));  // same-colored bishops
    CHECK_FALSE(insufficient_material(parse_fen("3bk3/8/8/8/8/8/8/4KB2 w - - 0 1")));
    CHECK_FALSE(insufficient_material(parse_fen("4k3/8/8/8/8/8/8/3NKN2 w - - 0 1")));

    // Knights out and back twice: the start position occurs three times.
    Board b = Board::initial();
    std::vector<PositionKey> history{position_key(b)};
    for (int round = 0; round < 2; ++round)
        for (const char* m : {"g1f3", "g8f6", "f3g1", "f6g8"}) {
            b = apply_move(b, *Move::parse(m));
            history.push_back(position_key(b));
        }
    CHECK(game_status(b, history).kind == GameStatus::Kind::draw_threefold);
    history.erase(history.begin());
    CHECK(game_status(b, history).kind == GameStatus::Kind::ongoing);
}

TEST_CASE("position keys ignore clocks") {
    const Board a = parse_fen("4k3/8/8/8/8/8/4P3/4K3 w - - 0 1");
    const Board b = parse_fen("4k3/8/8/8/8/8/4P3/4K3 w - - 12 40");
    const Board c = parse_fen("4k3/8/8/8/8/8/4P3/4K3 b - - 0 1");
    CHECK(position_key(a) == position_key(b));
    CHECK(position_key(a) != position_key(c));
}

TEST_CASE("properties over random positions") {
    const auto boards = movesense::testing::random_positions(150, 7);
    for (const auto& b : boards) {
        // FEN round trip.
        CHECK(parse_fen(emit_fen(b)) == b);

        const auto moves = legal_moves(b);
        CHECK(texts(moves) == texts(legal_moves(b)));
        std::uint64_t sum = 0;
        for (const auto& m : moves) {
            const Board next = apply_move(b, m);
            CHECK_FALSE(in_check(next, b.side_to_move));
            sum += perft(next, 1);
        }
        CHECK(sum == perft(b, 2));
    }
}

} // TEST_SUITE
