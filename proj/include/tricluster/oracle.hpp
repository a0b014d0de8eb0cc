#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tricluster/dyadic.hpp"

namespace tricluster {

namespace detail {
class OracleImpl;
}

/// A refinable enclosure of a complex constant: query(L) returns an L-bit
/// grid rectangle containing the exact value. Successive queries are nested:
/// the rectangle returned at L+k is contained in the one returned at L.
/// Refinement state is cached; queries are thread-safe per oracle.
class OracleNumber {
public:
    OracleNumber();  // exact zero

    ComplexGrid query(long L) const;

    static OracleNumber integer(const mpz_class& v);
    static OracleNumber rational(const mpq_class& re, const mpq_class& im = 0);
    static OracleNumber dyadic(const Dyadic& re, const Dyadic& im = Dyadic());
    /// Decimal literal such as "-1.37" or "2/3"; exact.
    static OracleNumber decimal(const std::string& s);
    /// Real algebraic number: integer polynomial (coefficients low to high)
    /// plus a rational isolating interval (a, b) with sign(p(a))*sign(p(b)) < 0.
    static OracleNumber algebraic(const std::vector<mpz_class>& poly,
                                  const mpq_class& a, const mpq_class& b);
    /// sqrt(k) for a nonnegative integer k.
    static OracleNumber sqrt_of(unsigned long k);

    OracleNumber operator+(const OracleNumber& o) const;
    OracleNumber operator-(const OracleNumber& o) const;
    OracleNumber operator*(const OracleNumber& o) const;
    OracleNumber operator-() const;

    /// Exact rational value if this oracle was built without algebraic leaves.
    bool is_exact_rational() const;
    /// Valid only when is_exact_rational(); (re, im).
    std::pair<mpq_class, mpq_class> exact_value() const;

    /// Human-readable description of the defining expression.
    std::string describe() const;

private:
    explicit OracleNumber(std::shared_ptr<detail::OracleImpl> impl);
    std::shared_ptr<detail::OracleImpl> impl_;
};

inline ComplexGrid oracle_query(const OracleNumber& o, long L) { return o.query(L); }

}  // namespace tricluster
