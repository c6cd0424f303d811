#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace movesense::nn::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;
std::optional<Isa> parse_isa(std::string_view name) noexcept;

/// Inner-loop primitives of the evaluator. Every variant computes the same
/// sums in the same order; variants differ only in fused multiply-add rounding.
struct KernelTable {
    Isa isa;

    // y[o] += sum_i x[i] * w[i * n_out + o]   for o in [0, n_out)
    void (*vecmat_accumulate)(const float* x, std::size_t n_in, const float* w,
                              std::size_t n_out, float* y);

    // x[i] = x[i] >= 0 ? x[i] : expm1(x[i])
    void (*elu_inplace)(float* x, std::size_t n);
};

/// Whether the ISA was compiled in and the running CPU supports it.
bool available(Isa isa) noexcept;

/// Every ISA usable on this machine, scalar first.
std::vector<Isa> available_isas();

/// Throws std::invalid_argument when the ISA is unavailable.
const KernelTable& table(Isa isa);

/// The fastest available table. The MOVESENSE_ISA environment variable
/// ("scalar", "avx2", "neon") overrides the choice when that ISA is available.
const KernelTable& active() noexcept;

} // namespace movesense::nn::kernels
