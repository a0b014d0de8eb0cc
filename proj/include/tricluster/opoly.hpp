#pragma once

#include <map>
#include <vector>

#include "tricluster/dyadic.hpp"
#include "tricluster/oracle.hpp"

namespace tricluster {

/// Univariate polynomial with complex-interval coefficients, dense, index 0..d.
/// The leading-coefficient interval is kept even when it contains 0.
struct IntervalPolynomial {
    std::vector<ComplexInterval> coeffs;

    IntervalPolynomial() = default;
    explicit IntervalPolynomial(std::vector<ComplexInterval> c) : coeffs(std::move(c)) {}

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    ComplexInterval evaluate(const ComplexInterval& z) const;

    /// Upper bound on the max coefficient magnitude.
    Dyadic norm_upper() const;

    /// Outward re-rounding of every coefficient to at most max_bits mantissa bits.
    IntervalPolynomial coarsen(size_t max_bits) const;
};

/// G enclosing F(c + r z) coefficient-wise: Horner shift by c, then exact
/// scaling of coefficient i by r^i.
IntervalPolynomial taylor_shift(const IntervalPolynomial& f, const ComplexInterval& c,
                                const Dyadic& r);

/// Root-squaring step: the result has the same degree and its roots are the
/// squares of f's roots. Computed as (-1)^d (E(x)^2 - x O(x)^2) from the
/// even/odd split f(z) = E(z^2) + z O(z^2), so the leading coefficient
/// encloses (lead f)^2.
IntervalPolynomial graeffe(const IntervalPolynomial& f);

/// Sparse multivariate polynomial with oracle coefficients.
/// Exponent vectors have length = arity; the map order fixes iteration order.
class OraclePolynomial {
public:
    using Exponent = std::vector<unsigned>;

    explicit OraclePolynomial(int arity) : arity_(arity) {}

    int arity() const { return arity_; }
    void add_term(const Exponent& e, const OracleNumber& c);
    const std::map<Exponent, OracleNumber>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    /// Degree in variable i (0-based); 0 for an empty polynomial.
    unsigned degree_in(int i) const;
    /// Degree sequence (d_1, ..., d_arity).
    std::vector<unsigned> degree_sequence() const;
    unsigned max_degree() const;

    /// Upper bound on the max coefficient magnitude, from L-bit queries.
    Dyadic norm_upper(long L) const;

    /// Dense interval approximation; requires arity 1. Every coefficient
    /// interval has width <= 2^-L and contains the exact coefficient;
    /// positions outside the support get exact-zero point intervals.
    IntervalPolynomial approximate(long L) const;

    /// Partial specialization of the first k variables (arity = k+1) on a
    /// polydisc: a univariate interval polynomial in the last variable that
    /// coefficient-wise contains f(b) for every point b of the polydisc.
    /// L controls coefficient-oracle precision and evaluation rounding.
    IntervalPolynomial specialize_interval(const PolyDisc& prefix, long L) const;

private:
    int arity_;
    std::map<Exponent, OracleNumber> terms_;
};

/// Max coefficient magnitude of an interval polynomial (upper bound).
inline Dyadic poly_norm(const IntervalPolynomial& f) { return f.norm_upper(); }

/// Triangular system f_1(z_1), f_2(z_1,z_2), ..., f_n(z_1..z_n) with
/// deg_{z_i}(f_i) >= 1. Regularity is assumed, not verified.
class TriangularSystem {
public:
    explicit TriangularSystem(std::vector<OraclePolynomial> polys);

    int dimension() const { return static_cast<int>(polys_.size()); }
    const OraclePolynomial& poly(int i) const { return polys_[i]; }

private:
    std::vector<OraclePolynomial> polys_;
};

}  // namespace tricluster
