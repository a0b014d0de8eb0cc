#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tricluster/parser.hpp"

namespace tricluster {

/// SplitMix64: the fixed generator used for reproducible benchmark systems.
/// state advances by the golden-gamma increment; output is the finalized mix.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [-bound, bound] by unbiased rejection sampling.
    long long uniform_signed(std::uint64_t bound);

private:
    std::uint64_t state_;
};

enum class GeneratorMode { simple, multiple };

struct GeneratorSpec {
    std::vector<unsigned> type;          // degree d_i of z_i in f_i
    std::uint64_t seed = 1;
    unsigned coeff_bound_log2 = 9;       // coefficients uniform in [-2^b, 2^b]
    GeneratorMode mode = GeneratorMode::simple;
};

/// Deterministic dense triangular system of the given type.
/// simple: f_i = sum_j g_j z_i^j with g_j dense of degree d_i - j in z_{i-1};
/// multiple: f_1 as in simple, f_i = a_i^2 (b_i z_i + c_i)^(d_i mod 2) with
/// deg_{z_i}(a_i) = floor(d_i/2) and b_i, c_i of degree d_i in z_{i-1}.
/// Leading coefficients in z_i are redrawn until nonzero so the declared
/// degree is attained.
ParsedSystem gen_random(const GeneratorSpec& spec);

}  // namespace tricluster
