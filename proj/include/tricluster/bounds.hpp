#pragma once

#include <vector>

#include "tricluster/dyadic.hpp"

namespace tricluster {

/// Precision budget for one approximate specialization: largest allowed
/// coefficient perturbation and point perturbation that keep the specialized
/// polynomial within the target error. Both are exact positive rationals;
/// delta_b_max is capped at 1.
struct PrecisionBudget {
    mpq_class delta_f_max;
    mpq_class delta_b_max;

    /// Bit counts ceil(-log2 delta) for querying oracles / sizing radii.
    long delta_f_bits() const;
    long delta_b_bits() const;
};

/// Power sum sum_{i=0}^{d} b^i for a nonnegative magnitude b; exact.
Dyadic beta(unsigned d, const Dyadic& b_abs);

/// Upper bound on the specialization error after substituting the first k
/// variables: [delta0_f + norm_f * sum_i d_i * delta_b_i] * prod_i beta(d_i,
/// |b_i| + delta_b_i). All arithmetic exact; inputs are magnitudes.
Dyadic perturbation_bound(const Dyadic& norm_f, const std::vector<unsigned>& d_seq,
                          const std::vector<Dyadic>& b_abs_seq, const Dyadic& delta0_f,
                          const std::vector<Dyadic>& delta_b_seq, size_t k);

/// Thresholds (*) and (**): with coefficient error <= delta_f_max and point
/// error <= delta_b_max, the specialized polynomial stays within delta_L of
/// the exact one. Requires n > 1; M must be ||b|| + 1.
PrecisionBudget required_precisions(const mpq_class& delta_L, unsigned d_max,
                                    const mpq_class& norm_f, const mpq_class& M, int n);

/// ceil(-log2 q) for a positive rational.
long bits_for(const mpq_class& q);

}  // namespace tricluster
