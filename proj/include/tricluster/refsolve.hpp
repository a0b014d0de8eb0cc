#pragma once

#include <string>
#include <vector>

#include "tricluster/clustertri.hpp"
#include "tricluster/parser.hpp"

namespace tricluster::refsolve {

/// Exact rational rectangle in C (endpoints are rationals, nothing rounds).
struct QRect {
    mpq_class xlo, xhi, ylo, yhi;

    static QRect point(const mpq_class& x, const mpq_class& y) { return {x, x, y, y}; }

    QRect operator+(const QRect& o) const;
    QRect operator-(const QRect& o) const;
    QRect operator*(const QRect& o) const;

    bool contains_zero() const;
    /// Rational |z| bounds: lower from the max-norm, upper from the 1-norm.
    mpq_class abs_lower() const;
    mpq_class abs_upper() const;
};

/// Univariate polynomial with exact rational rectangle coefficients.
struct QPoly {
    std::vector<QRect> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }
    static QPoly from_points(const std::vector<std::pair<mpq_class, mpq_class>>& coeffs);
};

/// Exact root count of every enclosed polynomial in the disc, or -1 when the
/// rational Pellet dominance cannot be decided.
int pellet_count(const QPoly& f, const mpq_class& cx, const mpq_class& cy, const mpq_class& r);

/// Count valid for the disc and its 3x blow-up, or -1.
int natural_count(const QPoly& f, const mpq_class& cx, const mpq_class& cy, const mpq_class& r);

struct QCluster {
    mpq_class cx, cy, r;
    int mult = 0;
};

class OracleTooExpensive : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Brute-force isolation: subdivides the square box (center, width) until
/// every root cluster of f is certified inside a disc of radius <= eps.
/// Completely independent of the dyadic solver path.
std::vector<QCluster> isolate(const QPoly& f, const mpq_class& cx, const mpq_class& cy,
                              const mpq_class& w, const mpq_class& eps, int max_rounds = 6000);

struct VerifyReport {
    bool pass = false;
    std::string details;
};

/// Recomputes the cluster/multiplicity structure of a dimension <= 2 rational
/// system by fine-grid subdivision with exact rational Pellet checks, then
/// diffs it against a solver result.
VerifyReport verify_result(const ParsedSystem& sys, const PolyBox& roi, const SolveResult& res);

/// Fiber solutions of a rational system of dimension <= 2 inside 2*roi, as
/// (per-component point enclosures, multiplicity vector) pairs.
struct RefSolution {
    std::vector<QCluster> point;   // one entry per dimension
    std::vector<int> multiplicities;
};
std::vector<RefSolution> solve_reference(const ParsedSystem& sys, const PolyBox& roi,
                                         const mpq_class& eps);

}  // namespace tricluster::refsolve
