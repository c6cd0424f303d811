#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "movesense/encoding/planes.hpp"
#include "movesense/nn/kernels.hpp"
#include "movesense/nn/weights.hpp"

namespace movesense::nn {

// Golden fixture text: '#' header lines carry key=value pairs
// (seed, f1, f2, weights_fnv1a64 in hex); every other non-empty line is
// "<hex tensor dump> <G> <B>".
struct GoldenCase {
    encoding::MoveTensor input;
    double good = 0.0;
    double bad = 0.0;
};

struct GoldenFixture {
    std::optional<std::uint64_t> seed;
    int f1 = 0;
    int f2 = 0;
    std::optional<std::uint64_t> weights_checksum;
    std::vector<GoldenCase> cases;
};

/// Throws std::runtime_error naming the offending line.
GoldenFixture parse_goldens(std::string_view text);
std::string format_goldens(const GoldenFixture& fixture);

std::string hex_encode(std::span<const std::byte> bytes);
std::vector<std::byte> hex_decode(std::string_view hex);

/// Weights the fixture was generated from, when it records a seed.
std::optional<NetworkWeights> fixture_weights(const GoldenFixture& fixture);

struct GoldenResult {
    std::size_t passed = 0;
    std::size_t total = 0;
    double max_error = 0.0;  // max |dG|, |dB| over cases
    bool ok() const noexcept { return passed == total; }
};

GoldenResult check_goldens(const NetworkWeights& weights, const GoldenFixture& fixture,
                           const kernels::KernelTable& kt, double tolerance = 1e-5);

} // namespace movesense::nn
