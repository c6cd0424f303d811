#include "movesense/encoding/planes.hpp"

#include <bit>
#include <cstring>

#include "movesense/chess/movegen.hpp"

namespace movesense::encoding {

using chess::Board;
using chess::Color;

StatePlanes encode_state(const Board& board) {
    StatePlanes planes;
    for (int i = 0; i < 64; ++i) {
        const int row = i / 8;
        const int col = i % 8;
        if (const auto& p = board.placement[i]) {
            planes.values[cell_offset(row, col, piece_channel(*p), kStateChannels)] =
                p->color == Color::white ? 1 : -1;
        }
        planes.values[cell_offset(row, col, kTurnChannel, kStateChannels)] =
            board.side_to_move == Color::white ? 1 : -1;
    }
    return planes;
}

StatePlanes MoveTensor::half(int which) const noexcept {
    StatePlanes planes;
    for (int cell = 0; cell < 64; ++cell)
        for (int ch = 0; ch < kStateChannels; ++ch)
            planes.values[static_cast<std::size_t>(cell * kStateChannels + ch)] = static_cast<std::int8_t>(
                values[static_cast<std::size_t>(cell * kPairChannels + which * kStateChannels + ch)]);
    return planes;
}

MoveTensor encode_move_pair(const Board& before, const Board& after, Validation validation) {
    if (validation == Validation::require_legal_move) {
        bool linked = false;
        std::vector<chess::Move> moves;
        chess::generate_legal(before, moves);
        for (const auto& m : moves) {
            const Board next = chess::make_move(before, m);
            if (next.placement == after.placement && next.side_to_move == after.side_to_move) {
                linked = true;
                break;
            }
        }
        if (!linked) throw IllegalTransition();
    }

    const StatePlanes pre = encode_state(before);
    const StatePlanes post = encode_state(after);
    MoveTensor tensor;
    for (int cell = 0; cell < 64; ++cell) {
        for (int ch = 0; ch < kStateChannels; ++ch) {
            const auto src = static_cast<std::size_t>(cell * kStateChannels + ch);
            const auto dst = static_cast<std::size_t>(cell * kPairChannels + ch);
            tensor.values[dst] = pre.values[src];
            tensor.values[dst + kStateChannels] = post.values[src];
        }
    }
    return tensor;
}

int material_score(const Board& board, Color color) noexcept {
    int total = 0;
    for (const auto& p : board.placement)
        if (p && p->color == color) total += material_value(p->kind);
    return total;
}

std::vector<std::byte> dump_tensor(const MoveTensor& tensor) {
    std::vector<std::byte> out(kDumpHeader.size() + kPairEntries * 4);
    std::memcpy(out.data(), kDumpHeader.data(), kDumpHeader.size());
    std::byte* dst = out.data() + kDumpHeader.size();
    for (float v : tensor.values) {
        std::uint32_t bits = std::bit_cast<std::uint32_t>(v);
        for (int b = 0; b < 4; ++b) *dst++ = static_cast<std::byte>((bits >> (8 * b)) & 0xFF);
    }
    return out;
}

MoveTensor read_tensor_dump(std::span<const std::byte> bytes) {
    if (bytes.size() != kDumpHeader.size() + kPairEntries * 4 ||
        std::memcmp(bytes.data(), kDumpHeader.data(), kDumpHeader.size()) != 0)
        throw std::runtime_error("not an 8x8x26 tensor dump");
    MoveTensor tensor;
    const std::byte* src = bytes.data() + kDumpHeader.size();
    for (auto& v : tensor.values) {
        std::uint32_t bits = 0;
        for (int b = 0; b < 4; ++b) bits |= static_cast<std::uint32_t>(*src++) << (8 * b);
        v = std::bit_cast<float>(bits);
    }
    return tensor;
}

} // namespace movesense::encoding
