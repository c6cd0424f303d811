#include "movesense/match/report.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "movesense/chess/pgn.hpp"

namespace movesense::match {
namespace {

nlohmann::ordered_json tally_json(const AgentTally& t) {
    nlohmann::ordered_json j;
    j["id"] = t.id;
    j["wins"] = t.wins;
    j["draws"] = t.draws;
    j["losses"] = t.losses;
    j["mean_material"] = t.mean_material;
    return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string pgn_result(Outcome o) {
    switch (o) {
    case Outcome::white: return "1-0";
    case Outcome::black: return "0-1";
    case Outcome::draw: return "1/2-1/2";
    }
    return "*";
}

} // namespace

std::string to_string(Termination t) {
    switch (t) {
    case Termination::checkmate: return "checkmate";
    case Termination::stalemate: return "stalemate";
    case Termination::draw_rule: return "draw-rule";
    case Termination::adjudicated: return "adjudicated";
    }
    return "unknown";
}

std::string report_json(const MatchReport& report) {
    nlohmann::ordered_json j;
    j["format"] = "movesense-match-report/1";
    j["first"] = report.first_spec;
    j["second"] = report.second_spec;
    j["games_requested"] = report.options.games;
    j["base_seed"] = report.options.base_seed;
    j["swap_colors"] = report.options.swap_colors;
    j["adjudicate_after"] = report.options.max_fullmoves;
    j["agents"] = nlohmann::ordered_json::array({tally_json(report.first), tally_json(report.second)});

    auto& games = j["games"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < report.games.size(); ++i) {
        const auto& g = report.games[i];
        nlohmann::ordered_json gj;
        gj["index"] = i;
        gj["seed"] = g.seed;
        gj["white"] = g.white_id;
        gj["black"] = g.black_id;
        gj["outcome"] = to_string(g.outcome);
        gj["termination"] = to_string(g.termination);
        gj["detail"] = g.termination_detail;
        gj["plies"] = g.moves.size();
        gj["final_fen"] = g.final_fen;
        gj["moves"] = g.moves;
        games.push_back(std::move(gj));
    }

    auto& maps = j["heatmaps"];
    maps["agent"] = report.first.id;
    for (auto color : {chess::Color::white, chess::Color::black}) {
        for (auto kind : chess::kAllKinds) {
            auto grid = nlohmann::ordered_json::array();
            for (int rank = 7; rank >= 0; --rank) {
                auto row = nlohmann::ordered_json::array();
                for (int file = 0; file < 8; ++file) row.push_back(report.heatmaps.at(color, kind, chess::Square(file, rank)));
                grid.push_back(std::move(row));
            }
            maps[std::string(chess::color_name(color))][std::string(chess::kind_name(kind))] = std::move(grid);
        }
    }
    return j.dump(2) + "\n";
}

std::string material_trace_csv(const MatchReport& report) {
    std::ostringstream out;
    out << "game,ply,white,black\n";
    for (std::size_t i = 0; i < report.games.size(); ++i) {
        const auto& trace = report.games[i].material_trace;
        for (std::size_t ply = 0; ply < trace.size(); ++ply)
            out << i << ',' << ply << ',' << trace[ply].white << ',' << trace[ply].black << '\n';
    }
    return out.str();
}

std::string heatmaps_csv(const MatchReport& report) {
    std::ostringstream out;
    out << "color,kind,file,rank,count\n";
    for (auto color : {chess::Color::white, chess::Color::black})
        for (auto kind : chess::kAllKinds)
            for (int rank = 0; rank < 8; ++rank)
                for (int file = 0; file < 8; ++file)
                    out << chess::color_name(color) << ',' << chess::kind_name(kind) << ','
                        << static_cast<char>('a' + file) << ',' << rank + 1 << ','
                        << report.heatmaps.at(color, kind, chess::Square(file, rank)) << '\n';
    return out.str();
}

std::string games_pgn(const MatchReport& report) {
    std::string out;
    for (std::size_t i = 0; i < report.games.size(); ++i) {
        const auto& g = report.games[i];
        std::vector<chess::Move> moves;
        for (const auto& text : g.moves) moves.push_back(*chess::Move::parse(text));
        const std::string result = pgn_result(g.outcome);
        if (i) out += '\n';
        out += chess::write_pgn({{"Event", "movesense match"},
                                 {"Round", std::to_string(i + 1)},
                                 {"White", g.white_id},
                                 {"Black", g.black_id},
                                 {"Result", result},
                                 {"Seed", std::to_string(g.seed)},
                                 {"Termination", g.termination_detail}},
                                chess::Board::initial(), moves, result);
    }
    return out;
}

void write_report(const MatchReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_text(dir / "report.json", report_json(report));
    write_text(dir / "material_trace.csv", material_trace_csv(report));
    write_text(dir / "heatmaps.csv", heatmaps_csv(report));
    write_text(dir / "games.pgn", games_pgn(report));
}

} // namespace movesense::match
