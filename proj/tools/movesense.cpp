// movesense: perft, analysis, matches, tensor encoding and golden self-checks.
//
// Exit codes: 0 success, 1 usage error (synopsis on stderr), 2 runtime error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "movesense/chess/fen.hpp"
#include "movesense/chess/movegen.hpp"
#include "movesense/chess/pgn.hpp"
#include "movesense/chess/random_play.hpp"
#include "movesense/encoding/planes.hpp"
#include "movesense/match/match.hpp"
#include "movesense/match/report.hpp"
#include "movesense/nn/goldens.hpp"
#include "movesense/nn/kernels.hpp"
#include "movesense/search/abms.hpp"

namespace fs = std::filesystem;
using namespace movesense;

namespace {

constexpr int kExitRuntime = 2;

struct RuntimeFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string default_weights() {
    const char* env = std::getenv("SENTICHESS_WEIGHTS");
    return env ? env : "";
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw RuntimeFailure("cannot read " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_bytes(const fs::path& path, std::span<const std::byte> bytes) {
    if (path == "-") {
        std::fwrite(bytes.data(), 1, bytes.size(), stdout);
        std::fflush(stdout);
        return;
    }
    nn::write_file_bytes(path, bytes);
}

std::string fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

// ---- perft ----

struct PerftArgs {
    std::string fen = "startpos";
    int depth = 1;
};

void run_perft(const PerftArgs& a) {
    std::cout << chess::perft(chess::parse_fen(a.fen), a.depth) << '\n';
}

// ---- analyze ----

struct AnalyzeArgs {
    std::string fen = "startpos";
    std::string eval = "material";
    int depth = 1;
    std::string weights;
};

void run_analyze(const AnalyzeArgs& a) {
    const chess::Board board = chess::parse_fen(a.fen);
    std::shared_ptr<const search::MoveEvaluator> evaluator;
    if (a.eval == "material") {
        evaluator = std::make_shared<search::MaterialDeltaEvaluator>();
    } else if (a.eval == "constant") {
        evaluator = std::make_shared<search::ConstantEvaluator>();
    } else {
        if (a.weights.empty()) throw RuntimeFailure("--eval neural needs --weights or SENTICHESS_WEIGHTS");
        evaluator = std::make_shared<search::NeuralEvaluator>(nn::load_weights_file(a.weights));
    }
    const auto ranked = search::rank_moves(board, {a.depth, evaluator});
    for (std::size_t i = 0; i < ranked.size(); ++i)
        std::cout << i + 1 << ' ' << ranked[i].move.text() << ' ' << chess::to_san(board, ranked[i].move) << ' '
                  << fixed6(ranked[i].score) << '\n';
}

// ---- match ----

struct MatchArgs {
    std::string white;
    std::string black;
    int games = 100;
    std::uint64_t seed = 0;
    bool swap_colors = false;
    int adjudicate_after = 40;
    std::string out;
    int jobs = 1;
    std::string weights;
};

void run_match_cmd(const MatchArgs& a) {
    auto first = match::AgentSpec::parse(a.white, a.weights);
    auto second = match::AgentSpec::parse(a.black, a.weights);
    first.load();
    second.load();
    match::MatchOptions options;
    options.games = a.games;
    options.base_seed = a.seed;
    options.swap_colors = a.swap_colors;
    options.max_fullmoves = a.adjudicate_after;
    options.jobs = a.jobs;
    const auto report = match::run_match(std::move(first), std::move(second), options);
    match::write_report(report, a.out);
    for (const auto* t : {&report.first, &report.second})
        std::cout << t->id << ": " << t->wins << " wins, " << t->draws << " draws, " << t->losses << " losses\n";
}

// ---- encode ----

struct EncodeArgs {
    std::string pgn;
    std::string jsonl;
    std::string fen;
    std::string move;
    std::size_t random = 0;
    std::uint64_t seed = 0;
    std::string out;
};

std::string numbered(std::string_view stem, std::size_t a, std::size_t width) {
    std::string n = std::to_string(a);
    if (n.size() < width) n.insert(0, width - n.size(), '0');
    return std::string(stem) + n;
}

void encode_pgn(const EncodeArgs& a) {
    const auto games = chess::parse_pgn_games(read_text(a.pgn));
    fs::create_directories(a.out);
    std::ofstream index(fs::path(a.out) / "index.tsv", std::ios::binary);
    index << "file\tgame\tply\tuci\tfen_before\tfen_after\n";
    std::size_t written = 0;
    for (std::size_t g = 0; g < games.size(); ++g) {
        chess::Board board = games[g].start;
        for (std::size_t p = 0; p < games[g].moves.size(); ++p) {
            const chess::Board after = chess::make_move(board, games[g].moves[p].move);
            const std::string name = numbered("g", g, 4) + numbered("_p", p, 4) + ".bin";
            nn::write_file_bytes(fs::path(a.out) / name,
                                 encoding::dump_tensor(encoding::encode_move_pair(board, after)));
            index << name << '\t' << g << '\t' << p << '\t' << games[g].moves[p].move.text() << '\t'
                  << chess::emit_fen(board) << '\t' << chess::emit_fen(after) << '\n';
            board = after;
            ++written;
        }
    }
    std::cout << written << " tensors from " << games.size() << " games\n";
}

void encode_jsonl(const EncodeArgs& a) {
    std::ifstream in(a.jsonl, std::ios::binary);
    if (!in) throw RuntimeFailure("cannot read " + a.jsonl);
    fs::create_directories(a.out);
    std::ofstream index(fs::path(a.out) / "index.tsv", std::ios::binary);
    index << "file\tuci\tsentiment\n";
    std::string line;
    std::size_t line_no = 0, written = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto where = "line " + std::to_string(line_no) + ": ";
        try {
            const auto record = nlohmann::json::parse(line);
            const chess::Board before = chess::parse_fen(record.at("fen_before").get<std::string>());
            const chess::Board after = chess::parse_fen(record.at("fen_after").get<std::string>());
            const std::string uci = record.at("uci").get<std::string>();
            const auto move = chess::Move::parse(uci);
            if (!move) throw RuntimeFailure("bad uci '" + uci + "'");
            const auto replayed = chess::apply_move(before, *move);
            if (replayed.placement != after.placement || replayed.side_to_move != after.side_to_move)
                throw RuntimeFailure("fen_after does not follow from fen_before and uci");
            const std::string name = numbered("r", written, 6) + ".bin";
            nn::write_file_bytes(fs::path(a.out) / name,
                                 encoding::dump_tensor(encoding::encode_move_pair(before, after)));
            index << name << '\t' << uci << '\t' << record.value("sentiment", std::string()) << '\n';
            ++written;
        } catch (const std::exception& e) {
            throw RuntimeFailure(where + e.what());
        }
    }
    std::cout << written << " tensors\n";
}

void encode_random(const EncodeArgs& a) {
    fs::create_directories(a.out);
    std::mt19937_64 rng(a.seed ^ 0x9e3779b97f4a7c15ULL);
    std::size_t i = 0;
    for (const auto& board : chess::random_positions(a.random, a.seed)) {
        const auto moves = chess::legal_moves(board);
        const auto& m = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
        nn::write_file_bytes(fs::path(a.out) / (numbered("r", i++, 6) + ".bin"),
                             encoding::dump_tensor(encoding::encode_move_pair(board, chess::make_move(board, m))));
    }
    std::cout << i << " tensors\n";
}

void run_encode(const EncodeArgs& a) {
    if (!a.pgn.empty()) return encode_pgn(a);
    if (!a.jsonl.empty()) return encode_jsonl(a);
    if (a.random > 0) return encode_random(a);
    const chess::Board before = chess::parse_fen(a.fen);
    const auto move = chess::Move::parse(a.move);
    if (!move) throw RuntimeFailure("bad move '" + a.move + "'");
    write_bytes(a.out, encoding::dump_tensor(encoding::encode_move_pair(before, chess::apply_move(before, *move))));
}

// ---- selfcheck ----

struct SelfcheckArgs {
    std::string goldens;
    std::string weights;
    double tolerance = 1e-5;
};

bool run_selfcheck(const SelfcheckArgs& a) {
    const auto fixture = nn::parse_goldens(read_text(a.goldens));
    std::optional<nn::NetworkWeights> weights;
    if (!a.weights.empty()) {
        weights.emplace(*nn::load_weights_file(a.weights));
    } else {
        weights = nn::fixture_weights(fixture);
        if (!weights) throw RuntimeFailure("fixture records no seed; pass --weights");
    }
    bool ok = true;
    if (fixture.weights_checksum) {
        const bool match = nn::fnv1a64(nn::save_weights(*weights)) == *fixture.weights_checksum;
        std::cout << "weights checksum: " << (match ? "match" : "MISMATCH") << '\n';
        ok = ok && match;
    }
    std::cout << "active kernels: " << nn::kernels::isa_name(nn::kernels::active().isa) << '\n';
    for (auto isa : nn::kernels::available_isas()) {
        const auto r = nn::check_goldens(*weights, fixture, nn::kernels::table(isa), a.tolerance);
        char err[32];
        std::snprintf(err, sizeof err, "%.3g", r.max_error);
        std::cout << nn::kernels::isa_name(isa) << ": " << r.passed << '/' << r.total << " within " << a.tolerance
                  << " (max error " << err << ")\n";
        ok = ok && r.ok() && r.total > 0;
    }
    std::cout << (ok ? "PASS" : "FAIL") << '\n';
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"movesense: move-pair evaluation engine, search and match harness"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "movesense 0.1.0");

    PerftArgs perft;
    auto* perft_cmd = app.add_subcommand("perft", "Count leaf nodes of the legal move tree");
    perft_cmd->add_option("--fen", perft.fen, "Position (FEN or 'startpos')")->capture_default_str();
    perft_cmd->add_option("--depth", perft.depth, "Plies")->required()->check(CLI::Range(0, 6));

    AnalyzeArgs analyze;
    analyze.weights = default_weights();
    auto* analyze_cmd = app.add_subcommand("analyze", "Rank every legal move by its searched value");
    analyze_cmd->add_option("--fen", analyze.fen, "Position (FEN or 'startpos')")->capture_default_str();
    analyze_cmd->add_option("--eval", analyze.eval, "Leaf evaluator")
        ->check(CLI::IsMember({"neural", "material", "constant"}))
        ->capture_default_str();
    analyze_cmd->add_option("--depth", analyze.depth, "Search depth in plies")->check(CLI::Range(1, 8))->capture_default_str();
    analyze_cmd->add_option("--weights", analyze.weights, "SMW1 weights (default: $SENTICHESS_WEIGHTS)")
        ->check(CLI::ExistingFile);

    MatchArgs match_args;
    match_args.weights = default_weights();
    auto* match_cmd = app.add_subcommand("match", "Play a seeded series of games and write a report");
    match_cmd->add_option("--white", match_args.white,
                          "First agent: random | material:D | constant:D | neural:D[:PATH]")
        ->required();
    match_cmd->add_option("--black", match_args.black, "Second agent (same forms)")->required();
    match_cmd->add_option("--games", match_args.games, "Number of games")->check(CLI::Range(1, 1000000))->capture_default_str();
    match_cmd->add_option("--seed", match_args.seed, "Base seed; game i uses seed + i")->capture_default_str();
    match_cmd->add_flag("--swap-colors", match_args.swap_colors, "Swap colors in odd-numbered games");
    match_cmd->add_option("--adjudicate-after", match_args.adjudicate_after, "Full moves before material adjudication")
        ->check(CLI::Range(1, 10000))
        ->capture_default_str();
    match_cmd->add_option("--out", match_args.out, "Report directory")->required();
    match_cmd->add_option("--jobs", match_args.jobs, "Games played in parallel")->check(CLI::Range(1, 256))->capture_default_str();
    match_cmd->add_option("--weights", match_args.weights, "Default SMW1 weights for network agents (default: $SENTICHESS_WEIGHTS)")
        ->check(CLI::ExistingFile);

    EncodeArgs encode;
    auto* encode_cmd = app.add_subcommand("encode", "Write 8x8x26 move-pair tensor dumps");
    auto* pgn_opt = encode_cmd->add_option("--pgn", encode.pgn, "PGN file; one dump per ply into --out DIR")
                        ->check(CLI::ExistingFile);
    auto* jsonl_opt = encode_cmd->add_option("--jsonl", encode.jsonl,
                                             "Line records with fen_before, fen_after, uci; one dump each into --out DIR")
                          ->check(CLI::ExistingFile);
    auto* random_opt = encode_cmd->add_option("--random", encode.random, "N seeded random legal move pairs into --out DIR");
    encode_cmd->add_option("--seed", encode.seed, "Seed for --random")->capture_default_str();
    auto* fen_opt = encode_cmd->add_option("--fen", encode.fen, "Position before the move (FEN or 'startpos')");
    auto* move_opt = encode_cmd->add_option("--move", encode.move, "Move in long algebraic form; dump written to --out FILE or '-'");
    encode_cmd->add_option("--out", encode.out, "Output directory, or file for --fen/--move")->required();
    pgn_opt->excludes(jsonl_opt, random_opt, fen_opt, move_opt);
    jsonl_opt->excludes(random_opt, fen_opt, move_opt);
    random_opt->excludes(fen_opt, move_opt);
    fen_opt->needs(move_opt);
    move_opt->needs(fen_opt);

    SelfcheckArgs selfcheck;
    auto* selfcheck_cmd = app.add_subcommand("selfcheck", "Compare the evaluator against a golden fixture");
    selfcheck_cmd->add_option("--goldens", selfcheck.goldens, "Golden fixture file")->required()->check(CLI::ExistingFile);
    selfcheck_cmd->add_option("--weights", selfcheck.weights, "SMW1 weights (default: regenerate from the fixture seed)")
        ->check(CLI::ExistingFile);
    selfcheck_cmd->add_option("--tolerance", selfcheck.tolerance, "Absolute tolerance on G and B")->capture_default_str();

    try {
        app.parse(argc, argv);
        if (encode_cmd->parsed() && !*pgn_opt && !*jsonl_opt && !*random_opt && !*fen_opt)
            throw CLI::RequiredError("one of --pgn, --jsonl, --random, --fen/--move");
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n";
        const CLI::App* failed = &app;
        for (auto* sub : app.get_subcommands()) failed = sub;
        std::cerr << failed->help();
        return 1;
    }

    try {
        if (perft_cmd->parsed()) run_perft(perft);
        else if (analyze_cmd->parsed()) run_analyze(analyze);
        else if (match_cmd->parsed()) run_match_cmd(match_args);
        else if (encode_cmd->parsed()) run_encode(encode);
        else if (selfcheck_cmd->parsed()) return run_selfcheck(selfcheck) ? 0 : kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
