#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "tricluster/dyadic.hpp"
#include "tricluster/opoly.hpp"
#include "tricluster/pellet.hpp"

namespace tricluster {

/// Supplier of interval approximations of a univariate polynomial.
/// An oracle-backed source honors any precision; a fixed source returns the
/// same polynomial regardless, so tests on it may stay undecidable.
class UnivariatePolySource {
public:
    virtual ~UnivariatePolySource() = default;
    virtual const IntervalPolynomial& at_precision(long L) = 0;
    virtual bool refinable() const = 0;
};

class OraclePolySource final : public UnivariatePolySource {
public:
    explicit OraclePolySource(const OraclePolynomial& f) : f_(f) {
        if (f.arity() != 1) throw std::invalid_argument("OraclePolySource: arity must be 1");
    }
    const IntervalPolynomial& at_precision(long L) override {
        auto it = cache_.find(L);
        if (it == cache_.end()) it = cache_.emplace(L, f_.approximate(L)).first;
        return it->second;
    }
    bool refinable() const override { return true; }

private:
    const OraclePolynomial& f_;
    std::map<long, IntervalPolynomial> cache_;
};

class FixedPolySource final : public UnivariatePolySource {
public:
    explicit FixedPolySource(IntervalPolynomial f) : f_(std::move(f)) {}
    const IntervalPolynomial& at_precision(long) override { return f_; }
    bool refinable() const override { return false; }

private:
    IntervalPolynomial f_;
};

/// A certified natural cluster: the isolator disc holds the same root
/// multiset as its 3x blow-up, with the stated total multiplicity.
/// cover_box is the square whose containing disc is the isolator.
struct UniCluster {
    Disc isolator;
    Box cover_box;
    int multiplicity = 0;
    long precision_bits = 0;
};

/// Raised when a fixed-precision source (or the precision cap) cannot decide
/// a test; carries the boxes of the component that was being processed.
class PrecisionExhausted : public std::runtime_error {
public:
    PrecisionExhausted(std::string what, std::vector<Box> comp)
        : std::runtime_error(std::move(what)), component(std::move(comp)) {}
    std::vector<Box> component;
};

struct ClusterOptions {
    long max_precision_bits = 1L << 16;
    int max_rounds = 4096;
};

/// Local clustering by quadrisection: pairwise-disjoint natural isolators of
/// radius <= eps whose clusters cover every root in roi and contain only
/// roots of 2*roi.
std::vector<UniCluster> cluster_univariate(UnivariatePolySource& src, const Box& roi,
                                           const Dyadic& eps, const ClusterOptions& opt = {});

/// Re-clusters the roots of an existing cluster at radius <= 2^-L. Children
/// cover exactly the parent's root multiset; multiplicities sum to the
/// parent's.
std::vector<UniCluster> cluster_refine(const UniCluster& c, UnivariatePolySource& src, long L,
                                       const ClusterOptions& opt = {});

}  // namespace tricluster
