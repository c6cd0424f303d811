#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "movesense/chess/board.hpp"

namespace movesense::encoding {

inline constexpr int kBoardSize = 8;
inline constexpr int kStateChannels = 13;
inline constexpr int kTurnChannel = 12;
inline constexpr int kPairChannels = 2 * kStateChannels;
inline constexpr std::size_t kStateEntries = 64 * kStateChannels;
inline constexpr std::size_t kPairEntries = 64 * kPairChannels;  // 1664

/// Channel index of a piece: kinds in {P,N,B,R,Q,K} order, white 0-5, black 6-11.
constexpr int piece_channel(chess::Piece p) noexcept {
    return static_cast<int>(p.kind) + (p.color == chess::Color::black ? 6 : 0);
}

/// Offset of (row, col, channel) in an 8x8xC grid stored row-major with channel fastest.
constexpr std::size_t cell_offset(int row, int col, int channel, int channels) noexcept {
    return (static_cast<std::size_t>(row) * 8 + static_cast<std::size_t>(col)) *
               static_cast<std::size_t>(channels) +
           static_cast<std::size_t>(channel);
}

/// 8x8x13 planes of one board. Row = rank - 1, column = file - 1.
/// Channels 0-5 hold +1 for white pieces, 6-11 hold -1 for black pieces,
/// channel 12 is +1 everywhere when white is to move and -1 otherwise.
struct StatePlanes {
    std::array<std::int8_t, kStateEntries> values{};

    std::int8_t at(int row, int col, int channel) const noexcept {
        return values[cell_offset(row, col, channel, kStateChannels)];
    }

    friend bool operator==(const StatePlanes&, const StatePlanes&) = default;
};

/// 8x8x26 network input: pre-move planes in channels 0-12, post-move in 13-25.
struct MoveTensor {
    std::array<float, kPairEntries> values{};

    float at(int row, int col, int channel) const noexcept {
        return values[cell_offset(row, col, channel, kPairChannels)];
    }
    /// Extracts one 13-channel half (0 = before, 1 = after).
    StatePlanes half(int which) const noexcept;

    friend bool operator==(const MoveTensor&, const MoveTensor&) = default;
};

class IllegalTransition : public std::runtime_error {
public:
    IllegalTransition() : std::runtime_error("no legal move links the two boards") {}
};

enum class Validation { none, require_legal_move };

StatePlanes encode_state(const chess::Board& board);

/// Stacks before/after planes. Validation compares placement and side to move
/// against every legal successor of `before`.
MoveTensor encode_move_pair(const chess::Board& before, const chess::Board& after,
                            Validation validation = Validation::require_legal_move);

/// Piece values Q:9 R:5 N:3 B:3 P:1, king 0.
constexpr int material_value(chess::PieceKind kind) noexcept {
    constexpr int kValues[] = {1, 3, 3, 5, 9, 0};
    return kValues[static_cast<int>(kind)];
}

int material_score(const chess::Board& board, chess::Color color) noexcept;

// Tensor dump: the ASCII line "8 8 26\n" followed by 1664 float32 LE values
// in (row, col, channel) order, channel fastest.
inline constexpr std::string_view kDumpHeader = "8 8 26\n";

std::vector<std::byte> dump_tensor(const MoveTensor& tensor);
/// Throws std::runtime_error on a bad header or size.
MoveTensor read_tensor_dump(std::span<const std::byte> bytes);

} // namespace movesense::encoding
