#include "tricluster/bounds.hpp"

#include <stdexcept>

namespace tricluster {

namespace {
// sign of q - 2^e
int cmp_q_pow2(const mpq_class& q, long e) {
    mpz_class lhs = q.get_num(), rhs = q.get_den();
    if (e >= 0)
        rhs <<= static_cast<unsigned long>(e);
    else
        lhs <<= static_cast<unsigned long>(-e);
    return cmp(lhs, rhs);
}
}

long bits_for(const mpq_class& q) {
    if (q <= 0) throw std::domain_error("bits_for: value must be positive");
    // Smallest L with 2^-L <= q.
    long num_bits = static_cast<long>(mpz_sizeinbase(q.get_num().get_mpz_t(), 2));
    long den_bits = static_cast<long>(mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
    long L = den_bits - num_bits;
    while (cmp_q_pow2(q, -L) < 0) ++L;
    while (cmp_q_pow2(q, -(L - 1)) >= 0) --L;
    return L;
}

Dyadic beta(unsigned d, const Dyadic& b_abs) {
    if (b_abs.sign() < 0) throw std::domain_error("beta: magnitude must be nonnegative");
    Dyadic sum(1), pw(1);
    for (unsigned i = 1; i <= d; ++i) {
        pw *= b_abs;
        sum += pw;
    }
    return sum;
}

Dyadic perturbation_bound(const Dyadic& norm_f, const std::vector<unsigned>& d_seq,
                          const std::vector<Dyadic>& b_abs_seq, const Dyadic& delta0_f,
                          const std::vector<Dyadic>& delta_b_seq, size_t k) {
    if (k > d_seq.size() || k > b_abs_seq.size() || k > delta_b_seq.size())
        throw std::invalid_argument("perturbation_bound: k exceeds sequence length");
    Dyadic head = delta0_f;
    for (size_t i = 0; i < k; ++i)
        head += norm_f * Dyadic(static_cast<long>(d_seq[i])) * delta_b_seq[i];
    Dyadic tail(1);
    for (size_t i = 0; i < k; ++i)
        tail *= beta(d_seq[i], b_abs_seq[i] + delta_b_seq[i]);
    return head * tail;
}

PrecisionBudget required_precisions(const mpq_class& delta_L, unsigned d_max,
                                    const mpq_class& norm_f, const mpq_class& M, int n) {
    if (n <= 1) throw std::invalid_argument("required_precisions: needs n > 1");
    if (delta_L <= 0) throw std::invalid_argument("required_precisions: delta_L must be positive");
    if (norm_f <= 0) throw std::invalid_argument("required_precisions: norm must be positive");
    if (d_max == 0) throw std::invalid_argument("required_precisions: degree must be positive");
    mpq_class md = 1;
    for (unsigned i = 0; i < d_max; ++i) md *= M;
    mpq_class base = (mpq_class(d_max) + 1) * md;  // (d+1) M^d
    mpq_class pw = 1;
    for (int i = 0; i < n - 1; ++i) pw *= base;

    PrecisionBudget b;
    b.delta_f_max = delta_L / (2 * pw);
    mpq_class db = delta_L / (2 * mpq_class(d_max) * norm_f * mpq_class(n - 1) * pw);
    b.delta_b_max = db < 1 ? db : mpq_class(1);
    b.delta_f_max.canonicalize();
    b.delta_b_max.canonicalize();
    return b;
}

long PrecisionBudget::delta_f_bits() const { return bits_for(delta_f_max); }
long PrecisionBudget::delta_b_bits() const { return bits_for(delta_b_max); }

}  // namespace tricluster
