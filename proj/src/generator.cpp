#include "tricluster/generator.hpp"

#include <sstream>
#include <stdexcept>

namespace tricluster {

long long SplitMix64::uniform_signed(std::uint64_t bound) {
    std::uint64_t range = 2 * bound + 1;
    std::uint64_t rem = (0 - range) % range;  // 2^64 mod range
    for (;;) {
        std::uint64_t u = next();
        if (u <= UINT64_MAX - rem)
            return static_cast<long long>(u % range) - static_cast<long long>(bound);
    }
}

namespace {

// Dense polynomial in z1..zk of exact degree `deg` in z_k, written as a fully
// parenthesized expression. Coefficients are drawn high degree first; the
// leading chain is redrawn until nonzero so the declared degree is attained.
std::string dense_poly(SplitMix64& rng, std::uint64_t bound, int k, unsigned deg, bool lead) {
    if (k == 0) {
        long long c = rng.uniform_signed(bound);
        while (lead && c == 0) c = rng.uniform_signed(bound);
        return std::to_string(c);
    }
    std::ostringstream os;
    os << "(";
    for (unsigned j = deg + 1; j-- > 0;) {
        std::string cj = dense_poly(rng, bound, k - 1, deg - j, lead && j == deg);
        if (j < deg) os << " + ";
        os << cj;
        if (j >= 1) {
            os << "*z" << k;
            if (j > 1) os << "^" << j;
        }
    }
    os << ")";
    return os.str();
}

}  // namespace

ParsedSystem gen_random(const GeneratorSpec& spec) {
    if (spec.type.empty()) throw std::invalid_argument("gen_random: empty type");
    for (unsigned d : spec.type)
        if (d < 1) throw std::invalid_argument("gen_random: degrees must be >= 1");
    std::uint64_t bound = 1ULL << spec.coeff_bound_log2;

    SplitMix64 rng(spec.seed);
    std::ostringstream text;
    for (size_t i = 0; i < spec.type.size(); ++i) {
        unsigned d = spec.type[i];
        int k = static_cast<int>(i) + 1;
        text << "f" << k << " = ";
        if (i == 0 || spec.mode == GeneratorMode::simple) {
            text << dense_poly(rng, bound, k, d, true);
        } else {
            // a_i^2 (b_i z_i + c_i)^(d_i mod 2): a_i of degree floor(d/2) in
            // z_i, b_i and c_i of degree d in z_{i-1}.
            std::string a = dense_poly(rng, bound, k, d / 2, true);
            text << a << "^2";
            if (d % 2 == 1) {
                std::string b = dense_poly(rng, bound, k - 1, d, true);
                std::string c = dense_poly(rng, bound, k - 1, d, true);
                text << "*(" << b << "*z" << k << " + " << c << ")";
            }
        }
        text << "\n";
    }
    return parse_system(text.str());
}

}  // namespace tricluster
