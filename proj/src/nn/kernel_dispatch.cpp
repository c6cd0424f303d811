#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"

namespace movesense::nn::kernels {

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
    }
    return "unknown";
}

std::optional<Isa> parse_isa(std::string_view name) noexcept {
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
        if (isa_name(isa) == name) return isa;
    return std::nullopt;
}

bool available(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#ifdef MOVESENSE_HAVE_AVX2_KERNELS
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    case Isa::neon:
#ifdef MOVESENSE_HAVE_NEON_KERNELS
        return true;  // mandatory on AArch64
#else
        return false;
#endif
    }
    return false;
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out;
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
        if (available(isa)) out.push_back(isa);
    return out;
}

const KernelTable& table(Isa isa) {
    if (!available(isa))
        throw std::invalid_argument("kernel ISA not available: " + std::string(isa_name(isa)));
    switch (isa) {
#ifdef MOVESENSE_HAVE_AVX2_KERNELS
    case Isa::avx2: return detail::kAvx2Table;
#endif
#ifdef MOVESENSE_HAVE_NEON_KERNELS
    case Isa::neon: return detail::kNeonTable;
#endif
    default: return detail::kScalarTable;
    }
}

namespace {

const KernelTable& select_best() noexcept {
    if (const char* forced = std::getenv("MOVESENSE_ISA")) {
        if (auto isa = parse_isa(forced); isa && available(*isa)) return table(*isa);
    }
    if (available(Isa::avx2)) return table(Isa::avx2);
    if (available(Isa::neon)) return table(Isa::neon);
    return detail::kScalarTable;
}

} // namespace

const KernelTable& active() noexcept {
    static const KernelTable& chosen = select_best();
    return chosen;
}

} // namespace movesense::nn::kernels
