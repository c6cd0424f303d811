#pragma once

#include <filesystem>
#include <string>

#include "movesense/match/match.hpp"

namespace movesense::match {

// Output files of a match run. Layouts are described in docs/report-format.md.
std::string report_json(const MatchReport& report);
std::string material_trace_csv(const MatchReport& report);
std::string heatmaps_csv(const MatchReport& report);
std::string games_pgn(const MatchReport& report);

/// Writes report.json, material_trace.csv, heatmaps.csv and games.pgn into dir
/// (created if missing).
void write_report(const MatchReport& report, const std::filesystem::path& dir);

std::string to_string(Termination t);

} // namespace movesense::match
