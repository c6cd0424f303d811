#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace movesense::nn {

inline constexpr int kConv1Size = 5;
inline constexpr int kConv2Size = 3;
inline constexpr int kInputChannels = 26;
inline constexpr int kHidden1 = 500;
inline constexpr int kHidden2 = 200;
inline constexpr int kOutputs = 2;  // index 0 = good, 1 = bad

inline constexpr int kDefaultF1 = 64;
inline constexpr int kDefaultF2 = 128;

class WeightsError : public std::runtime_error {
public:
    enum class Kind { bad_magic, unknown_dtype, missing_tensor, dim_mismatch, truncated_file };

    WeightsError(Kind kind, const std::string& what, std::string tensor = {},
                 std::vector<std::uint32_t> expected = {}, std::vector<std::uint32_t> found = {})
        : std::runtime_error(what), kind_(kind), tensor_(std::move(tensor)),
          expected_(std::move(expected)), found_(std::move(found)) {}

    Kind kind() const noexcept { return kind_; }
    const std::string& tensor() const noexcept { return tensor_; }
    const std::vector<std::uint32_t>& expected() const noexcept { return expected_; }
    const std::vector<std::uint32_t>& found() const noexcept { return found_; }

private:
    Kind kind_;
    std::string tensor_;
    std::vector<std::uint32_t> expected_;
    std::vector<std::uint32_t> found_;
};

/// Raw tensors of the evaluation network, in SMW1 layouts:
/// kernels (kh, kw, in, out), dense (in, out) with y = xW + b.
struct WeightTensors {
    int f1 = 0;
    int f2 = 0;
    std::vector<float> conv1_weight, conv1_bias;
    std::vector<float> conv2_weight, conv2_bias;
    std::vector<float> fc1_weight, fc1_bias;
    std::vector<float> fc2_weight, fc2_bias;
    std::vector<float> out_weight, out_bias;
};

/// Shape of each required tensor for filter counts (f1, f2), in file order.
struct TensorSpec {
    std::string name;
    std::vector<std::uint32_t> dims;
};
std::vector<TensorSpec> required_tensors(int f1, int f2);

/// Immutable, validated network weights. Share via std::shared_ptr<const NetworkWeights>.
class NetworkWeights {
public:
    /// Throws WeightsError(dim_mismatch) when any size disagrees with (f1, f2).
    explicit NetworkWeights(WeightTensors tensors);

    int f1() const noexcept { return t_.f1; }
    int f2() const noexcept { return t_.f2; }
    const WeightTensors& tensors() const noexcept { return t_; }

    /// Tensor by SMW1 name; empty span for unknown names.
    std::span<const float> tensor(std::string_view name) const noexcept;

private:
    WeightTensors t_;
};

/// Glorot-uniform weights from a portable splitmix64 stream (bit-identical on
/// every platform). Biases are uniform in [-0.1, 0.1).
NetworkWeights random_weights(int f1, int f2, std::uint64_t seed);

NetworkWeights zero_weights(int f1, int f2);

// SMW1 container.
std::vector<std::byte> save_weights(const NetworkWeights& weights);
NetworkWeights load_weights(std::span<const std::byte> bytes);

std::vector<std::byte> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::byte> bytes);

std::shared_ptr<const NetworkWeights> load_weights_file(const std::filesystem::path& path);
void save_weights_file(const NetworkWeights& weights, const std::filesystem::path& path);

/// 64-bit FNV-1a, used as the weights checksum in golden fixtures.
std::uint64_t fnv1a64(std::span<const std::byte> bytes) noexcept;

} // namespace movesense::nn
