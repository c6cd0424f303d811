#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "movesense/chess/board.hpp"
#include "movesense/chess/types.hpp"
#include "movesense/nn/weights.hpp"

namespace movesense::match {

class AgentInitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class AgentKind { neural, material, constant, random };

/// Who plays. Text forms: "random", "material:D", "constant:D",
/// "neural:D" (weights from the default path) and "neural:D:PATH".
struct AgentSpec {
    AgentKind kind = AgentKind::random;
    int depth = 1;
    std::string weights_path;
    std::string id;

    /// Weights shared by every game; filled by load().
    std::shared_ptr<const nn::NetworkWeights> weights;

    /// Throws std::invalid_argument on malformed text.
    static AgentSpec parse(std::string_view text, const std::string& default_weights = {});

    /// Loads weights for network agents. Throws AgentInitError.
    void load();
};

class Agent {
public:
    virtual ~Agent() = default;
    virtual chess::Move choose(const chess::Board& board, std::span<const chess::PositionKey> history) = 0;
};

/// seed feeds the random agent's stream; search agents ignore it.
std::unique_ptr<Agent> make_agent(const AgentSpec& spec, std::uint64_t seed, chess::Color color);

enum class Outcome { white, black, draw };
enum class Termination { checkmate, stalemate, draw_rule, adjudicated };

std::string to_string(Outcome o);

struct MaterialPoint {
    int white = 0;
    int black = 0;

    friend bool operator==(const MaterialPoint&, const MaterialPoint&) = default;
};

struct GameRecord {
    std::string white_id;
    std::string black_id;
    std::vector<std::string> moves;            // canonical move text
    std::vector<MaterialPoint> material_trace;  // moves.size() + 1 entries
    Outcome outcome = Outcome::draw;
    Termination termination = Termination::adjudicated;
    std::string termination_detail;  // e.g. "draw-threefold", "adjudicated-40"
    std::uint64_t seed = 0;
    std::string final_fen;
};

/// Material comparison at the horizon; equal material is a draw.
Outcome adjudicate(const chess::Board& board);

using Adjudicator = std::function<Outcome(const chess::Board&)>;

struct GameOptions {
    int max_fullmoves = 40;
    Adjudicator adjudicator = adjudicate;
};

/// Plays from the initial position. Agent specs with network kinds must be load()ed
/// or loadable. Throws AgentInitError.
GameRecord play_game(const AgentSpec& white, const AgentSpec& black, std::uint64_t seed,
                     const GameOptions& options = {});

/// [color][kind][square] destination counts.
struct Heatmaps {
    std::array<std::array<std::array<int, 64>, 6>, 2> counts{};

    int at(chess::Color c, chess::PieceKind k, chess::Square sq) const noexcept {
        return counts[static_cast<int>(c)][static_cast<int>(k)][sq.index()];
    }
    long total() const noexcept;
};

/// Counts where the designated agent's pieces land after each of its moves.
/// The piece counted is the one standing on the destination after the move;
/// castling also counts the rook's destination.
Heatmaps piece_heatmaps(std::span<const GameRecord> games, std::string_view agent_id);

struct AgentTally {
    std::string id;
    int wins = 0;
    int draws = 0;
    int losses = 0;
    std::vector<double> mean_material;  // per ply, over games that reached it
};

struct MatchOptions {
    int games = 100;
    std::uint64_t base_seed = 0;
    bool swap_colors = false;
    int max_fullmoves = 40;
    int jobs = 1;
};

struct MatchReport {
    std::string first_spec;
    std::string second_spec;
    MatchOptions options;
    std::vector<GameRecord> games;  // by game index
    AgentTally first;               // plays white in even games
    AgentTally second;
    Heatmaps heatmaps;              // for the first agent
};

/// Game i uses seed base_seed + i. With swap_colors, odd games swap sides.
MatchReport run_match(AgentSpec first, AgentSpec second, const MatchOptions& options);

} // namespace movesense::match
