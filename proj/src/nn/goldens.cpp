#include "movesense/nn/goldens.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "movesense/nn/network.hpp"

namespace movesense::nn {
namespace {

std::uint64_t parse_u64(std::string_view text, int base, std::size_t line) {
    if (base == 16 && text.starts_with("0x")) text.remove_prefix(2);
    std::uint64_t v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v, base);
    if (ec != std::errc{} || end != text.data() + text.size())
        throw std::runtime_error("goldens line " + std::to_string(line) + ": bad number '" + std::string(text) + "'");
    return v;
}

double parse_double(const std::string& text, std::size_t line) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty())
        throw std::runtime_error("goldens line " + std::to_string(line) + ": bad probability '" + text + "'");
    return v;
}

void parse_header(std::string_view body, GoldenFixture& fixture, std::size_t line) {
    std::istringstream in{std::string(body)};
    std::string item;
    while (in >> item) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) continue;
        const std::string_view key = std::string_view(item).substr(0, eq);
        const std::string_view value = std::string_view(item).substr(eq + 1);
        if (key == "seed") fixture.seed = parse_u64(value, 10, line);
        else if (key == "f1") fixture.f1 = static_cast<int>(parse_u64(value, 10, line));
        else if (key == "f2") fixture.f2 = static_cast<int>(parse_u64(value, 10, line));
        else if (key == "weights_fnv1a64") fixture.weights_checksum = parse_u64(value, 16, line);
    }
}

} // namespace

std::string hex_encode(std::span<const std::byte> bytes) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        const auto v = std::to_integer<unsigned>(b);
        out.push_back(kDigits[v >> 4]);
        out.push_back(kDigits[v & 15]);
    }
    return out;
}

std::vector<std::byte> hex_decode(std::string_view hex) {
    if (hex.size() % 2 != 0) throw std::runtime_error("odd-length hex string");
    auto nibble = [](char c) -> unsigned {
        if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
        if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
        if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
        throw std::runtime_error(std::string("bad hex digit '") + c + "'");
    };
    std::vector<std::byte> out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::byte>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
    return out;
}

GoldenFixture parse_goldens(std::string_view text) {
    GoldenFixture fixture;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
        if (line.front() == '#') {
            parse_header(line.substr(1), fixture, line_no);
            continue;
        }
        std::istringstream in{std::string(line)};
        std::string hex, g, b, extra;
        if (!(in >> hex >> g >> b) || (in >> extra))
            throw std::runtime_error("goldens line " + std::to_string(line_no) + ": expected '<hex> <G> <B>'");
        GoldenCase c;
        try {
            c.input = encoding::read_tensor_dump(hex_decode(hex));
        } catch (const std::exception& e) {
            throw std::runtime_error("goldens line " + std::to_string(line_no) + ": " + e.what());
        }
        c.good = parse_double(g, line_no);
        c.bad = parse_double(b, line_no);
        fixture.cases.push_back(std::move(c));
    }
    return fixture;
}

std::string format_goldens(const GoldenFixture& fixture) {
    std::string out = "# movesense golden fixture\n#";
    if (fixture.seed) out += " seed=" + std::to_string(*fixture.seed);
    out += " f1=" + std::to_string(fixture.f1) + " f2=" + std::to_string(fixture.f2);
    if (fixture.weights_checksum) {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(*fixture.weights_checksum));
        out += std::string(" weights_fnv1a64=") + buf;
    }
    out += '\n';
    for (const auto& c : fixture.cases) {
        char probs[64];
        std::snprintf(probs, sizeof probs, " %.12f %.12f\n", c.good, c.bad);
        out += hex_encode(encoding::dump_tensor(c.input));
        out += probs;
    }
    return out;
}

std::optional<NetworkWeights> fixture_weights(const GoldenFixture& fixture) {
    if (!fixture.seed || fixture.f1 <= 0 || fixture.f2 <= 0) return std::nullopt;
    return random_weights(fixture.f1, fixture.f2, *fixture.seed);
}

GoldenResult check_goldens(const NetworkWeights& weights, const GoldenFixture& fixture,
                           const kernels::KernelTable& kt, double tolerance) {
    GoldenResult r;
    r.total = fixture.cases.size();
    for (const auto& c : fixture.cases) {
        const auto out = forward(weights, c.input, kt);
        const double err = std::max(std::abs(out.good - c.good), std::abs(out.bad - c.bad));
        r.max_error = std::max(r.max_error, err);
        if (err <= tolerance) ++r.passed;
    }
    return r;
}

} // namespace movesense::nn
