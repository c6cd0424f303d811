#include "movesense/nn/weights.hpp"

#include <bit>
#include <cmath>
#include <algorithm>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <type_traits>

namespace movesense::nn {
namespace {

constexpr char kMagic[4] = {'S', 'M', 'W', '1'};
constexpr std::uint8_t kDtypeFloat32 = 0;

std::size_t element_count(const std::vector<std::uint32_t>& dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                           [](std::size_t a, std::uint32_t d) { return a * d; });
}

std::string dims_text(const std::vector<std::uint32_t>& dims) {
    std::string s = "[";
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(dims[i]);
    }
    return s + "]";
}

// Tensor slots in SMW1 file order.
template <typename Tensors>
auto ordered(Tensors& t) {
    using Slot = std::conditional_t<std::is_const_v<Tensors>, const std::vector<float>, std::vector<float>>;
    return std::vector<std::reference_wrapper<Slot>>{t.conv1_weight, t.conv1_bias, t.conv2_weight, t.conv2_bias, t.fc1_weight,
            t.fc1_bias,     t.fc2_weight, t.fc2_bias,     t.out_weight, t.out_bias};
}

class ByteReader {
public:
    explicit ByteReader(std::span<const std::byte> bytes) : bytes_(bytes) {}

    std::span<const std::byte> take(std::size_t n) {
        if (bytes_.size() - pos_ < n)
            throw WeightsError(WeightsError::Kind::truncated_file, "SMW1: file is truncated");
        auto s = bytes_.subspan(pos_, n);
        pos_ += n;
        return s;
    }

    template <typename T>
    T read_le() {
        auto s = take(sizeof(T));
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(s[i]) << (8 * i);
        return static_cast<T>(v);
    }

private:
    std::span<const std::byte> bytes_;
    std::size_t pos_ = 0;
};

template <typename T>
void write_le(std::vector<std::byte>& out, T value) {
    const auto v = static_cast<std::uint64_t>(value);
    for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xFF));
}

struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() noexcept {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Exact in float32: 24 random bits mapped to [-1, 1).
    float symmetric() noexcept {
        const float u = static_cast<float>(next() >> 40) * 0x1p-24f;
        return 2.0f * u - 1.0f;
    }
};

} // namespace

std::vector<TensorSpec> required_tensors(int f1, int f2) {
    const auto F1 = static_cast<std::uint32_t>(f1);
    const auto F2 = static_cast<std::uint32_t>(f2);
    return {
        {"conv1.weight", {kConv1Size, kConv1Size, kInputChannels, F1}},
        {"conv1.bias", {F1}},
        {"conv2.weight", {kConv2Size, kConv2Size, F1, F2}},
        {"conv2.bias", {F2}},
        {"fc1.weight", {64 * F2, kHidden1}},
        {"fc1.bias", {kHidden1}},
        {"fc2.weight", {kHidden1, kHidden2}},
        {"fc2.bias", {kHidden2}},
        {"out.weight", {kHidden2, kOutputs}},
        {"out.bias", {kOutputs}},
    };
}

NetworkWeights::NetworkWeights(WeightTensors tensors) : t_(std::move(tensors)) {
    if (t_.f1 <= 0 || t_.f2 <= 0)
        throw WeightsError(WeightsError::Kind::dim_mismatch, "filter counts must be positive");
    const auto specs = required_tensors(t_.f1, t_.f2);
    auto slots = ordered(t_);
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const std::size_t want = element_count(specs[i].dims);
        if (slots[i].get().size() != want)
            throw WeightsError(WeightsError::Kind::dim_mismatch,
                               specs[i].name + ": expected " + std::to_string(want) + " values, found " +
                                   std::to_string(slots[i].get().size()),
                               specs[i].name, specs[i].dims);
    }
}

std::span<const float> NetworkWeights::tensor(std::string_view name) const noexcept {
    const auto specs = required_tensors(t_.f1, t_.f2);
    auto slots = ordered(t_);
    for (std::size_t i = 0; i < specs.size(); ++i)
        if (specs[i].name == name) return slots[i].get();
    return {};
}

NetworkWeights random_weights(int f1, int f2, std::uint64_t seed) {
    WeightTensors t;
    t.f1 = f1;
    t.f2 = f2;
    SplitMix64 rng{seed};
    const auto specs = required_tensors(f1, f2);
    auto slots = ordered(t);
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto& dims = specs[i].dims;
        auto& values = slots[i].get();
        values.resize(element_count(dims));
        float scale = 0.1f;
        if (dims.size() > 1) {
            // fan_in covers every axis except the last; fan_out is the last axis
            // times the spatial taps.
            const std::size_t out = dims.back();
            const std::size_t fan_in = element_count(dims) / out;
            const std::size_t taps = dims.size() == 4 ? std::size_t{dims[0]} * dims[1] : 1;
            scale = static_cast<float>(std::sqrt(6.0 / static_cast<double>(fan_in + out * taps)));
        }
        for (auto& v : values) v = rng.symmetric() * scale;
    }
    return NetworkWeights(std::move(t));
}

NetworkWeights zero_weights(int f1, int f2) {
    WeightTensors t;
    t.f1 = f1;
    t.f2 = f2;
    const auto specs = required_tensors(f1, f2);
    auto slots = ordered(t);
    for (std::size_t i = 0; i < specs.size(); ++i) slots[i].get().assign(element_count(specs[i].dims), 0.0f);
    return NetworkWeights(std::move(t));
}

std::vector<std::byte> save_weights(const NetworkWeights& weights) {
    std::vector<std::byte> out;
    for (char c : kMagic) out.push_back(static_cast<std::byte>(c));
    const auto specs = required_tensors(weights.f1(), weights.f2());
    write_le<std::uint32_t>(out, static_cast<std::uint32_t>(specs.size()));
    for (const auto& spec : specs) {
        write_le<std::uint16_t>(out, static_cast<std::uint16_t>(spec.name.size()));
        for (char c : spec.name) out.push_back(static_cast<std::byte>(c));
        write_le<std::uint8_t>(out, kDtypeFloat32);
        write_le<std::uint8_t>(out, static_cast<std::uint8_t>(spec.dims.size()));
        for (auto d : spec.dims) write_le<std::uint32_t>(out, d);
        for (float v : weights.tensor(spec.name)) write_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(v));
    }
    return out;
}

NetworkWeights load_weights(std::span<const std::byte> bytes) {
    ByteReader in(bytes);
    const std::size_t head = std::min<std::size_t>(bytes.size(), 4);
    if (std::memcmp(bytes.data(), kMagic, head) != 0)
        throw WeightsError(WeightsError::Kind::bad_magic, "SMW1: bad magic");
    if (head < 4) throw WeightsError(WeightsError::Kind::truncated_file, "SMW1: truncated header");
    in.take(4);

    struct Raw {
        std::vector<std::uint32_t> dims;
        std::vector<float> values;
    };
    std::map<std::string, Raw, std::less<>> found;

    const auto count = in.read_le<std::uint32_t>();
    for (std::uint32_t i = 0; i < count; ++i) {
        const auto name_len = in.read_le<std::uint16_t>();
        const auto name_bytes = in.take(name_len);
        std::string name(reinterpret_cast<const char*>(name_bytes.data()), name_bytes.size());
        const auto dtype = in.read_le<std::uint8_t>();
        if (dtype != kDtypeFloat32)
            throw WeightsError(WeightsError::Kind::unknown_dtype,
                               "SMW1: unknown dtype " + std::to_string(dtype) + " for " + name, name);
        const auto ndim = in.read_le<std::uint8_t>();
        Raw raw;
        for (int d = 0; d < ndim; ++d) raw.dims.push_back(in.read_le<std::uint32_t>());
        const std::size_t n = element_count(raw.dims);
        if (n > bytes.size() / 4)
            throw WeightsError(WeightsError::Kind::truncated_file, "SMW1: file is truncated");
        const auto blob = in.take(n * 4);
        raw.values.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            std::uint32_t bits = 0;
            for (int b = 0; b < 4; ++b) bits |= static_cast<std::uint32_t>(blob[k * 4 + b]) << (8 * b);
            raw.values[k] = std::bit_cast<float>(bits);
        }
        found.try_emplace(std::move(name), std::move(raw));
    }

    auto require = [&](const std::string& name) -> Raw& {
        auto it = found.find(name);
        if (it == found.end())
            throw WeightsError(WeightsError::Kind::missing_tensor, "SMW1: missing tensor " + name, name);
        return it->second;
    };

    // Filter counts come from the conv kernels; everything else must agree.
    const auto& conv1 = require("conv1.weight");
    const auto& conv2 = require("conv2.weight");
    if (conv1.dims.size() != 4 || conv1.dims[3] == 0)
        throw WeightsError(WeightsError::Kind::dim_mismatch, "SMW1: conv1.weight must be 4-D",
                           "conv1.weight", {kConv1Size, kConv1Size, kInputChannels, 0}, conv1.dims);
    if (conv2.dims.size() != 4 || conv2.dims[3] == 0)
        throw WeightsError(WeightsError::Kind::dim_mismatch, "SMW1: conv2.weight must be 4-D",
                           "conv2.weight", {kConv2Size, kConv2Size, conv1.dims[3], 0}, conv2.dims);

    WeightTensors t;
    t.f1 = static_cast<int>(conv1.dims[3]);
    t.f2 = static_cast<int>(conv2.dims[3]);
    const auto specs = required_tensors(t.f1, t.f2);
    auto slots = ordered(t);
    for (std::size_t i = 0; i < specs.size(); ++i) {
        auto& raw = require(specs[i].name);
        if (raw.dims != specs[i].dims)
            throw WeightsError(WeightsError::Kind::dim_mismatch,
                               "SMW1: " + specs[i].name + " expected " + dims_text(specs[i].dims) +
                                   ", found " + dims_text(raw.dims),
                               specs[i].name, specs[i].dims, raw.dims);
        slots[i].get() = std::move(raw.values);
    }
    return NetworkWeights(std::move(t));
}

std::vector<std::byte> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<char> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<std::byte> bytes(data.size());
    std::memcpy(bytes.data(), data.data(), data.size());
    return bytes;
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::byte> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::shared_ptr<const NetworkWeights> load_weights_file(const std::filesystem::path& path) {
    const auto bytes = read_file_bytes(path);
    return std::make_shared<const NetworkWeights>(load_weights(bytes));
}

void save_weights_file(const NetworkWeights& weights, const std::filesystem::path& path) {
    write_file_bytes(path, save_weights(weights));
}

std::uint64_t fnv1a64(std::span<const std::byte> bytes) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto b : bytes) {
        h ^= static_cast<std::uint64_t>(b);
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace movesense::nn
