#pragma once

#include <cstdint>
#include <vector>

#include "tricluster/dyadic.hpp"
#include "tricluster/generator.hpp"
#include "tricluster/opoly.hpp"

namespace tctest {

using tricluster::ComplexInterval;
using tricluster::Dyadic;
using tricluster::ExactInterval;
using tricluster::IntervalPolynomial;
using tricluster::SplitMix64;

inline Dyadic rand_dyadic(SplitMix64& rng, long mag_bits, long frac_bits) {
    long long num = rng.uniform_signed(1ULL << (mag_bits + frac_bits));
    return Dyadic(mpz_class(num), -frac_bits);
}

/// Monic polynomial with the given exact complex-rational roots, as an
/// interval polynomial whose coefficients are exact points.
inline IntervalPolynomial poly_from_roots(
    const std::vector<std::pair<Dyadic, Dyadic>>& roots) {
    std::vector<ComplexInterval> c{ComplexInterval::point(Dyadic(1))};
    for (const auto& [rx, ry] : roots) {
        std::vector<ComplexInterval> next(c.size() + 1, ComplexInterval::point(Dyadic()));
        ComplexInterval root = ComplexInterval::point(rx, ry);
        for (size_t i = 0; i < c.size(); ++i) {
            next[i + 1] = next[i + 1] + c[i];
            next[i] = next[i] - root * c[i];
        }
        c = std::move(next);
    }
    return IntervalPolynomial(std::move(c));
}

/// Exact count of the listed roots inside the closed disc.
inline int roots_in_disc(const std::vector<std::pair<Dyadic, Dyadic>>& roots,
                         const tricluster::Disc& d) {
    int count = 0;
    Dyadic r2 = d.r * d.r;
    for (const auto& [rx, ry] : roots) {
        Dyadic dx = rx - d.cx, dy = ry - d.cy;
        if (dx * dx + dy * dy <= r2) ++count;
    }
    return count;
}

}  // namespace tctest
