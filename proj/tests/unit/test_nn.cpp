#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <limits>
#include <random>

#include "movesense/chess/movegen.hpp"
#include "movesense/encoding/planes.hpp"
#include "movesense/nn/goldens.hpp"
#include "movesense/nn/kernels.hpp"
#include "movesense/nn/network.hpp"
#include "movesense/nn/weights.hpp"
#include "support/random_positions.hpp"
#include "support/reference_forward.hpp"

using namespace movesense;
using namespace movesense::nn;

namespace {

WeightsError::Kind load_error(std::span<const std::byte> bytes) {
    try {
        load_weights(bytes);
    } catch (const WeightsError& e) {
        return e.kind();
    }
    FAIL("load_weights accepted a broken file");
    return WeightsError::Kind::bad_magic;
}

void put_u32(std::vector<std::byte>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::byte>(v >> (8 * i)));
}

// Hand-written SMW1 writer, so the container layout is checked independently.
std::vector<std::byte> write_smw1(const std::vector<std::pair<TensorSpec, std::vector<float>>>& tensors,
                                  std::uint8_t dtype = 0) {
    std::vector<std::byte> out;
    for (char c : std::string("SMW1")) out.push_back(static_cast<std::byte>(c));
    put_u32(out, static_cast<std::uint32_t>(tensors.size()));
    for (const auto& [spec, data] : tensors) {
        out.push_back(static_cast<std::byte>(spec.name.size() & 0xff));
        out.push_back(static_cast<std::byte>(spec.name.size() >> 8));
        for (char c : spec.name) out.push_back(static_cast<std::byte>(c));
        out.push_back(static_cast<std::byte>(dtype));
        out.push_back(static_cast<std::byte>(spec.dims.size()));
        for (auto d : spec.dims) put_u32(out, d);
        for (float f : data) {
            std::uint32_t bits;
            std::memcpy(&bits, &f, 4);
            put_u32(out, bits);
        }
    }
    return out;
}

std::vector<std::pair<TensorSpec, std::vector<float>>> filled_tensors(int f1, int f2, float value) {
    std::vector<std::pair<TensorSpec, std::vector<float>>> out;
    for (auto& spec : required_tensors(f1, f2)) {
        std::size_t n = 1;
        for (auto d : spec.dims) n *= d;
        out.emplace_back(spec, std::vector<float>(n, value));
    }
    return out;
}

std::vector<encoding::MoveTensor> random_pairs(std::size_t count, std::uint64_t seed) {
    std::vector<encoding::MoveTensor> out;
    std::mt19937_64 rng(seed);
    for (const auto& b : testing::random_positions(count, seed)) {
        const auto moves = chess::legal_moves(b);
        const auto& m = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
        out.push_back(encoding::encode_move_pair(b, chess::make_move(b, m)));
    }
    return out;
}

} // namespace

TEST_SUITE("weights") {

TEST_CASE("required tensor shapes") {
    const auto specs = required_tensors(64, 128);
    REQUIRE(specs.size() == 10);
    CHECK(specs[0].name == "conv1.weight");
    CHECK(specs[0].dims == std::vector<std::uint32_t>{5, 5, 26, 64});
    CHECK(specs[2].dims == std::vector<std::uint32_t>{3, 3, 64, 128});
    CHECK(specs[4].name == "fc1.weight");
    CHECK(specs[4].dims == std::vector<std::uint32_t>{8192, 500});
    CHECK(specs[8].dims == std::vector<std::uint32_t>{200, 2});
    CHECK(specs[9].name == "out.bias");
}

TEST_CASE("save/load round trip is bit exact") {
    const auto w = random_weights(2, 2, 17);
    const auto bytes = save_weights(w);
    const auto back = load_weights(bytes);
    CHECK(back.f1() == 2);
    CHECK(back.f2() == 2);
    for (const auto& spec : required_tensors(2, 2)) {
        const auto a = w.tensor(spec.name);
        const auto b = back.tensor(spec.name);
        REQUIRE(a.size() == b.size());
        CHECK(std::memcmp(a.data(), b.data(), a.size_bytes()) == 0);
    }
    CHECK(save_weights(back) == bytes);
}

TEST_CASE("independent writer loads") {
    const auto bytes = write_smw1(filled_tensors(3, 5, 0.25f));
    const auto w = load_weights(bytes);
    CHECK(w.f1() == 3);
    CHECK(w.f2() == 5);
    CHECK(w.tensor("fc2.bias")[199] == 0.25f);
    CHECK(save_weights(w) == bytes);
}

TEST_CASE("tensor order in the file does not matter") {
    auto tensors = filled_tensors(2, 2, 0.5f);
    std::swap(tensors[0], tensors[9]);
    CHECK(load_weights(write_smw1(tensors)).f1() == 2);
}

TEST_CASE("bad magic") {
    auto bytes = save_weights(random_weights(2, 2, 1));
    std::memcpy(bytes.data(), "XXXX", 4);
    CHECK(load_error(bytes) == WeightsError::Kind::bad_magic);
}

TEST_CASE("fc1 dimension mismatch names the tensor") {
    auto tensors = filled_tensors(2, 2, 0.0f);
    tensors[4].first.dims = {100, 500};
    tensors[4].second.resize(100 * 500);
    const auto bytes = write_smw1(tensors);
    try {
        load_weights(bytes);
        FAIL("expected dim_mismatch");
    } catch (const WeightsError& e) {
        CHECK(e.kind() == WeightsError::Kind::dim_mismatch);
        CHECK(e.tensor() == "fc1.weight");
        CHECK(e.expected() == std::vector<std::uint32_t>{128, 500});
        CHECK(e.found() == std::vector<std::uint32_t>{100, 500});
    }
}

TEST_CASE("missing tensor, unknown dtype, truncation") {
    auto tensors = filled_tensors(2, 2, 0.0f);
    tensors.erase(tensors.begin() + 7);
    CHECK(load_error(write_smw1(tensors)) == WeightsError::Kind::missing_tensor);

    CHECK(load_error(write_smw1(filled_tensors(2, 2, 0.0f), 3)) == WeightsError::Kind::unknown_dtype);

    const auto full = save_weights(random_weights(2, 2, 4));
    for (std::size_t cut : {std::size_t{2}, std::size_t{9}, std::size_t{30}, full.size() - 1})
        CHECK(load_error(std::span(full).first(cut)) == WeightsError::Kind::truncated_file);
}

TEST_CASE("random weights are deterministic and bounded") {
    const auto a = save_weights(random_weights(4, 4, 1234));
    const auto b = save_weights(random_weights(4, 4, 1234));
    CHECK(a == b);
    CHECK(fnv1a64(a) != fnv1a64(save_weights(random_weights(4, 4, 1235))));
    const auto w = random_weights(4, 4, 1234);
    const double limit = std::sqrt(6.0 / (25 * 26 + 25 * 4));
    for (float x : w.tensor("conv1.weight")) CHECK(std::abs(x) <= limit);
    for (float x : w.tensor("fc1.bias")) CHECK(std::abs(x) <= 0.1f);
}

TEST_CASE("fnv1a64 reference values") {
    CHECK(fnv1a64({}) == 0xcbf29ce484222325ULL);
    const std::byte a[] = {std::byte{'a'}};
    CHECK(fnv1a64(a) == 0xaf63dc4c8601ec8cULL);
}

} // TEST_SUITE

TEST_SUITE("kernels") {

TEST_CASE("scalar is always available and first") {
    const auto isas = kernels::available_isas();
    REQUIRE_FALSE(isas.empty());
    CHECK(isas.front() == kernels::Isa::scalar);
    CHECK(kernels::parse_isa("avx2") == kernels::Isa::avx2);
    CHECK_FALSE(kernels::parse_isa("sse9"));
    CHECK(kernels::available(kernels::active().isa));
}

TEST_CASE("MOVESENSE_ISA selects the active table") {
    const char* forced = std::getenv("MOVESENSE_ISA");
    if (!forced) return;
    const auto isa = kernels::parse_isa(forced);
    REQUIRE(isa);
    CHECK(kernels::active().isa == *isa);
}

TEST_CASE("every ISA matches scalar vecmat across shapes") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
    const auto& ref = kernels::table(kernels::Isa::scalar);
    for (auto isa : kernels::available_isas()) {
        CAPTURE(kernels::isa_name(isa));
        const auto& kt = kernels::table(isa);
        for (std::size_t n_in : {1, 3, 26, 64, 129})
            for (std::size_t n_out : {1, 2, 7, 8, 9, 31, 32, 33, 64, 200, 500}) {
                std::vector<float> x(n_in), w(n_in * n_out), y0(n_out), y1;
                for (auto& v : x) v = dist(rng);
                for (auto& v : w) v = dist(rng);
                for (auto& v : y0) v = dist(rng);
                y1 = y0;
                ref.vecmat_accumulate(x.data(), n_in, w.data(), n_out, y0.data());
                kt.vecmat_accumulate(x.data(), n_in, w.data(), n_out, y1.data());
                for (std::size_t o = 0; o < n_out; ++o)
                    CHECK(y1[o] == doctest::Approx(y0[o]).epsilon(1e-5));
            }
    }
}

TEST_CASE("every ISA matches scalar elu") {
    for (auto isa : kernels::available_isas()) {
        std::vector<float> a(37), b;
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = static_cast<float>(i) * 0.3f - 5.0f;
        b = a;
        kernels::table(kernels::Isa::scalar).elu_inplace(a.data(), a.size());
        kernels::table(isa).elu_inplace(b.data(), b.size());
        CHECK(a == b);
    }
}

} // TEST_SUITE

TEST_SUITE("forward") {

TEST_CASE("elu and softmax reference values") {
    CHECK(elu(-1.0) == doctest::Approx(-0.63212).epsilon(1e-5));
    CHECK(elu(2.5) == 2.5);
    CHECK(elu(0.0) == 0.0);
    const auto p = softmax(std::log(3.0), 0.0);
    CHECK(p[0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(p[0] + p[1] == doctest::Approx(1.0));
    const auto big = softmax(1000.0, 0.0);
    CHECK(big[0] == 1.0);
    CHECK(std::isfinite(big[1]));
}

TEST_CASE("zero weights give an even split") {
    const auto w = zero_weights(4, 4);
    for (const auto& t : random_pairs(5, 3)) {
        const auto out = forward(w, t);
        CHECK(out.good == 0.5);
        CHECK(out.bad == 0.5);
    }
}

TEST_CASE("oracle agreement on seeded pairs, every ISA") {
    const auto w = random_weights(4, 4, 2024);
    const auto pairs = random_pairs(100, 31);
    for (auto isa : kernels::available_isas()) {
        CAPTURE(kernels::isa_name(isa));
        const auto& kt = kernels::table(isa);
        for (const auto& t : pairs) {
            const auto ref = testing::reference_forward(w, t);
            const auto out = forward(w, t, kt);
            CHECK(std::abs(out.good - ref[0]) <= 1e-5);
            CHECK(std::abs(out.bad - ref[1]) <= 1e-5);
            CHECK(out.good + out.bad == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("default-size network agrees with the oracle") {
    const auto w = random_weights(kDefaultF1, kDefaultF2, 5);
    for (const auto& t : random_pairs(3, 8)) {
        const auto ref = testing::reference_forward(w, t);
        CHECK(std::abs(forward(w, t).good - ref[0]) <= 1e-5);
    }
}

TEST_CASE("swapping output columns swaps G and B") {
    const auto w = random_weights(4, 4, 9);
    auto tensors = w.tensors();
    for (int i = 0; i < kHidden2; ++i) std::swap(tensors.out_weight[2 * i], tensors.out_weight[2 * i + 1]);
    std::swap(tensors.out_bias[0], tensors.out_bias[1]);
    const NetworkWeights swapped(std::move(tensors));
    for (const auto& t : random_pairs(10, 12)) {
        const auto a = forward(w, t);
        const auto b = forward(swapped, t);
        CHECK(a.good == doctest::Approx(b.bad).epsilon(1e-12));
        CHECK(a.bad == doctest::Approx(b.good).epsilon(1e-12));
    }
}

TEST_CASE("forward is deterministic") {
    const auto w = random_weights(4, 4, 10);
    for (const auto& t : random_pairs(10, 13)) {
        const auto a = forward(w, t);
        const auto b = forward(w, t);
        CHECK(a.good == b.good);
        CHECK(a.bad == b.bad);
    }
}

TEST_CASE("non-finite weights are reported") {
    auto tensors = random_weights(4, 4, 11).tensors();
    tensors.fc2_weight[3] = std::numeric_limits<float>::quiet_NaN();
    const NetworkWeights broken(std::move(tensors));
    CHECK_THROWS_AS(forward(broken, random_pairs(1, 14)[0]), NonFiniteActivation);
}

TEST_CASE("constructor rejects inconsistent sizes") {
    auto tensors = random_weights(4, 4, 11).tensors();
    tensors.fc1_bias.pop_back();
    CHECK_THROWS_AS(NetworkWeights(std::move(tensors)), WeightsError);
}

} // TEST_SUITE

TEST_SUITE("goldens") {

TEST_CASE("hex round trip") {
    const std::vector<std::byte> bytes{std::byte{0x00}, std::byte{0xab}, std::byte{0x7f}};
    CHECK(hex_encode(bytes) == "00ab7f");
    CHECK(hex_decode("00AB7f") == bytes);
    CHECK_THROWS(hex_decode("abc"));
    CHECK_THROWS(hex_decode("zz"));
}

TEST_CASE("format and parse round trip") {
    GoldenFixture fixture;
    fixture.seed = 99;
    fixture.f1 = 2;
    fixture.f2 = 3;
    const auto w = *fixture_weights(fixture);
    fixture.weights_checksum = fnv1a64(save_weights(w));
    for (const auto& t : random_pairs(4, 21)) {
        const auto out = forward(w, t);
        fixture.cases.push_back({t, out.good, out.bad});
    }
    const auto text = format_goldens(fixture);
    const auto back = parse_goldens(text);
    CHECK(back.seed == 99u);
    CHECK(back.f1 == 2);
    CHECK(back.f2 == 3);
    CHECK(back.weights_checksum == fixture.weights_checksum);
    REQUIRE(back.cases.size() == 4);
    CHECK(back.cases[2].input == fixture.cases[2].input);
    for (auto isa : kernels::available_isas()) {
        const auto r = check_goldens(w, back, kernels::table(isa));
        CHECK(r.ok());
        if (isa == kernels::active().isa) CHECK(r.max_error < 1e-11);
    }
    CHECK(format_goldens(back) == text);
}

TEST_CASE("malformed lines are reported") {
    CHECK_THROWS_WITH(parse_goldens("# f1=4\n00 0.5\n"), doctest::Contains("line 2"));
    CHECK_THROWS_WITH(parse_goldens("3820 0.5 0.5\n"), doctest::Contains("line 1"));
    CHECK(parse_goldens("# only a header\n\n").cases.empty());
    CHECK_FALSE(fixture_weights(parse_goldens("# f1=4 f2=4\n")));
}

TEST_CASE("a tampered weights blob is detected") {
    GoldenFixture fixture;
    fixture.seed = 5;
    fixture.f1 = fixture.f2 = 4;
    const auto w = *fixture_weights(fixture);
    for (const auto& t : random_pairs(16, 22)) {
        const auto out = forward(w, t);
        fixture.cases.push_back({t, out.good, out.bad});
    }
    auto bytes = save_weights(w);
    const auto checksum = fnv1a64(bytes);
    // Flip an exponent bit of the last out.weight value; the out.bias record
    // after it takes 24 bytes.
    bytes[bytes.size() - 24 - 1] ^= std::byte{0x40};
    CHECK(fnv1a64(bytes) != checksum);
    const auto tampered = load_weights(bytes);
    CHECK_FALSE(check_goldens(tampered, fixture, kernels::active()).ok());
}

TEST_CASE("committed fixture passes") {
    std::ifstream in(MOVESENSE_TEST_FIXTURES "/goldens.txt", std::ios::binary);
    REQUIRE(in);
    std::stringstream text;
    text << in.rdbuf();
    const auto fixture = parse_goldens(text.str());
    CHECK(fixture.cases.size() == 32);
    const auto w = fixture_weights(fixture);
    REQUIRE(w);
    CHECK(fixture.weights_checksum == fnv1a64(save_weights(*w)));
    for (const auto& c : fixture.cases) CHECK(c.good + c.bad == doctest::Approx(1.0).epsilon(1e-9));
    for (auto isa : kernels::available_isas()) CHECK(check_goldens(*w, fixture, kernels::table(isa)).ok());
}

} // TEST_SUITE
