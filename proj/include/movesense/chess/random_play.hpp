#pragma once

#include <cstdint>
#include <vector>

#include "movesense/chess/board.hpp"

namespace movesense::chess {

/// Positions reached by seeded uniform random playouts from the initial
/// position, each of 0..max_plies plies. Every returned board has a legal move.
std::vector<Board> random_positions(std::size_t count, std::uint64_t seed, int max_plies = 80);

} // namespace movesense::chess
