#include "movesense/match/match.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "movesense/chess/fen.hpp"
#include "movesense/chess/movegen.hpp"
#include "movesense/encoding/planes.hpp"
#include "movesense/search/abms.hpp"

namespace movesense::match {

using chess::Board;
using chess::Color;

namespace {

int parse_depth(std::string_view text) {
    int depth = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), depth);
    if (ec != std::errc{} || ptr != text.data() + text.size() || depth < 1)
        throw std::invalid_argument("agent depth must be an integer >= 1, got '" + std::string(text) + "'");
    return depth;
}

std::uint64_t mix(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

class RandomAgent final : public Agent {
public:
    explicit RandomAgent(std::uint64_t seed) : rng_(seed) {}

    chess::Move choose(const Board& board, std::span<const chess::PositionKey>) override {
        const auto moves = chess::legal_moves(board);
        std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
        return moves[pick(rng_)];
    }

private:
    std::mt19937_64 rng_;
};

class SearchAgent final : public Agent {
public:
    SearchAgent(int depth, std::shared_ptr<const search::MoveEvaluator> evaluator)
        : config_{depth, std::move(evaluator)} {}

    chess::Move choose(const Board& board, std::span<const chess::PositionKey> history) override {
        return search::abms_search(board, config_, history).best_move;
    }

private:
    search::SearchConfig config_;
};

Outcome outcome_for_winner(Color c) {
    return c == Color::white ? Outcome::white : Outcome::black;
}

} // namespace

AgentSpec AgentSpec::parse(std::string_view text, const std::string& default_weights) {
    AgentSpec spec;
    const auto first = text.find(':');
    const std::string_view kind = text.substr(0, first);
    std::string_view rest = first == std::string_view::npos ? std::string_view{} : text.substr(first + 1);

    if (kind == "random") {
        if (!rest.empty()) throw std::invalid_argument("random agent takes no parameters");
        spec.kind = AgentKind::random;
        spec.id = "random";
        return spec;
    }
    if (kind == "material" || kind == "constant") {
        spec.kind = kind == "material" ? AgentKind::material : AgentKind::constant;
        spec.depth = rest.empty() ? 1 : parse_depth(rest);
        spec.id = std::string(kind) + ":" + std::to_string(spec.depth);
        return spec;
    }
    if (kind == "neural") {
        spec.kind = AgentKind::neural;
        const auto colon = rest.find(':');
        const std::string_view depth = rest.substr(0, colon);
        spec.depth = depth.empty() ? 1 : parse_depth(depth);
        spec.weights_path = colon == std::string_view::npos ? default_weights : std::string(rest.substr(colon + 1));
        spec.id = "neural:" + std::to_string(spec.depth);
        return spec;
    }
    throw std::invalid_argument("unknown agent '" + std::string(text) +
                                "' (expected random, material:D, constant:D or neural:D[:PATH])");
}

void AgentSpec::load() {
    if (kind != AgentKind::neural || weights) return;
    if (weights_path.empty()) throw AgentInitError("network agent needs a weights file (--weights or SENTICHESS_WEIGHTS)");
    try {
        weights = nn::load_weights_file(weights_path);
    } catch (const std::exception& e) {
        throw AgentInitError("cannot load weights '" + weights_path + "': " + e.what());
    }
}

std::unique_ptr<Agent> make_agent(const AgentSpec& spec, std::uint64_t seed, Color color) {
    switch (spec.kind) {
    case AgentKind::random:
        return std::make_unique<RandomAgent>(mix(seed ^ (color == Color::white ? 0x57u : 0xB1u)));
    case AgentKind::material:
        return std::make_unique<SearchAgent>(spec.depth, std::make_shared<search::MaterialDeltaEvaluator>());
    case AgentKind::constant:
        return std::make_unique<SearchAgent>(spec.depth, std::make_shared<search::ConstantEvaluator>());
    case AgentKind::neural: {
        AgentSpec loaded = spec;
        loaded.load();
        return std::make_unique<SearchAgent>(spec.depth, std::make_shared<search::NeuralEvaluator>(loaded.weights));
    }
    }
    throw AgentInitError("unknown agent kind");
}

std::string to_string(Outcome o) {
    switch (o) {
    case Outcome::white: return "white";
    case Outcome::black: return "black";
    case Outcome::draw: return "draw";
    }
    return "unknown";
}

Outcome adjudicate(const Board& board) {
    const int white = encoding::material_score(board, Color::white);
    const int black = encoding::material_score(board, Color::black);
    if (white > black) return Outcome::white;
    if (black > white) return Outcome::black;
    return Outcome::draw;
}

GameRecord play_game(const AgentSpec& white, const AgentSpec& black, std::uint64_t seed,
                     const GameOptions& options) {
    auto white_agent = make_agent(white, seed, Color::white);
    auto black_agent = make_agent(black, seed, Color::black);

    GameRecord record;
    record.white_id = white.id;
    record.black_id = black.id;
    record.seed = seed;

    Board board = Board::initial();
    std::vector<chess::PositionKey> history{chess::position_key(board)};
    auto material = [](const Board& b) {
        return MaterialPoint{encoding::material_score(b, Color::white), encoding::material_score(b, Color::black)};
    };
    record.material_trace.push_back(material(board));

    const std::size_t horizon = 2 * static_cast<std::size_t>(options.max_fullmoves);
    while (true) {
        const auto status = chess::game_status(board, history);
        if (status.kind == chess::GameStatus::Kind::checkmate) {
            record.outcome = outcome_for_winner(*status.winner);
            record.termination = Termination::checkmate;
            record.termination_detail = "checkmate";
            break;
        }
        if (status.kind == chess::GameStatus::Kind::stalemate) {
            record.outcome = Outcome::draw;
            record.termination = Termination::stalemate;
            record.termination_detail = "stalemate";
            break;
        }
        if (status.is_draw()) {
            record.outcome = Outcome::draw;
            record.termination = Termination::draw_rule;
            record.termination_detail = chess::to_string(status.kind);
            break;
        }
        if (record.moves.size() >= horizon) {
            record.outcome = options.adjudicator(board);
            record.termination = Termination::adjudicated;
            record.termination_detail = "adjudicated-" + std::to_string(options.max_fullmoves);
            break;
        }
        Agent& mover = board.side_to_move == Color::white ? *white_agent : *black_agent;
        const chess::Move move = mover.choose(board, history);
        board = chess::apply_move(board, move);
        history.push_back(chess::position_key(board));
        record.moves.push_back(move.text());
        record.material_trace.push_back(material(board));
    }
    record.final_fen = chess::emit_fen(board);
    return record;
}

long Heatmaps::total() const noexcept {
    long sum = 0;
    for (const auto& color : counts)
        for (const auto& kind : color)
            for (int v : kind) sum += v;
    return sum;
}

Heatmaps piece_heatmaps(std::span<const GameRecord> games, std::string_view agent_id) {
    Heatmaps maps;
    for (const auto& game : games) {
        std::optional<Color> side;
        if (game.white_id == agent_id) side = Color::white;
        else if (game.black_id == agent_id) side = Color::black;
        if (!side) continue;

        Board board = Board::initial();
        for (const auto& text : game.moves) {
            const auto move = chess::Move::parse(text);
            if (!move) throw std::invalid_argument("bad move text in game record: " + text);
            const Color mover = board.side_to_move;
            const bool castle = chess::is_castling(board, *move);
            board = chess::apply_move(board, *move);
            if (mover != *side) continue;
            auto bump = [&](chess::Square sq) {
                const auto& p = board.at(sq);
                ++maps.counts[static_cast<int>(p->color)][static_cast<int>(p->kind)][sq.index()];
            };
            bump(move->to);
            if (castle) bump(chess::Square(move->to.file() == 6 ? 5 : 3, move->to.rank()));
        }
    }
    return maps;
}

MatchReport run_match(AgentSpec first, AgentSpec second, const MatchOptions& options) {
    if (options.games < 1) throw std::invalid_argument("match needs at least one game");
    if (first.id == second.id) {
        first.id += "#1";
        second.id += "#2";
    }
    first.load();
    second.load();

    MatchReport report;
    report.first_spec = first.id;
    report.second_spec = second.id;
    report.options = options;
    report.games.resize(static_cast<std::size_t>(options.games));

    const GameOptions game_options{options.max_fullmoves, adjudicate};
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (int i = next++; i < options.games; i = next++) {
            try {
                const bool swapped = options.swap_colors && (i % 2 == 1);
                const auto seed = options.base_seed + static_cast<std::uint64_t>(i);
                report.games[static_cast<std::size_t>(i)] =
                    swapped ? play_game(second, first, seed, game_options) : play_game(first, second, seed, game_options);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const int jobs = std::clamp(options.jobs, 1, options.games);
    {
        std::vector<std::jthread> pool;
        for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
        worker();
    }
    if (failure) std::rethrow_exception(failure);

    report.first.id = first.id;
    report.second.id = second.id;
    std::vector<double> sums[2];
    std::vector<int> counts;
    for (const auto& game : report.games) {
        const bool first_white = game.white_id == first.id;
        AgentTally& white_tally = first_white ? report.first : report.second;
        AgentTally& black_tally = first_white ? report.second : report.first;
        switch (game.outcome) {
        case Outcome::white: ++white_tally.wins; ++black_tally.losses; break;
        case Outcome::black: ++black_tally.wins; ++white_tally.losses; break;
        case Outcome::draw: ++white_tally.draws; ++black_tally.draws; break;
        }
        const std::size_t n = game.material_trace.size();
        if (counts.size() < n) {
            counts.resize(n, 0);
            sums[0].resize(n, 0.0);
            sums[1].resize(n, 0.0);
        }
        for (std::size_t ply = 0; ply < n; ++ply) {
            const auto& point = game.material_trace[ply];
            sums[0][ply] += first_white ? point.white : point.black;
            sums[1][ply] += first_white ? point.black : point.white;
            ++counts[ply];
        }
    }
    for (std::size_t ply = 0; ply < counts.size(); ++ply) {
        report.first.mean_material.push_back(sums[0][ply] / counts[ply]);
        report.second.mean_material.push_back(sums[1][ply] / counts[ply]);
    }
    report.heatmaps = piece_heatmaps(report.games, first.id);
    return report;
}

} // namespace movesense::match
