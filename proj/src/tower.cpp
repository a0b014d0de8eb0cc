#include "tricluster/tower.hpp"

#include <stdexcept>

#include "tricluster/bounds.hpp"

namespace tricluster {

long long total_multiplicity(const std::vector<int>& m) {
    long long t = 1;
    for (int x : m) {
        if (x < 1) throw std::invalid_argument("multiplicities must be positive");
        t *= x;
    }
    return t;
}

long long total_multiplicity(const ClusterOracle& o, int dimension) {
    if (o.level != dimension)
        throw std::invalid_argument("total multiplicity requires a full-height oracle");
    return total_multiplicity(o.multiplicities);
}

Tower tower_of(const ClusterOracle& o) {
    Tower t;
    t.multiplicities = o.multiplicities;
    PolyBox prefix(o.domain.begin(), o.domain.begin() + o.level);
    t.polydisc = containing_disc(prefix);
    return t;
}

std::vector<ClusterOracle> lift_level_1(const TriangularSystem& f, const ClusterOracle& o,
                                        const ClusterOptions& opt) {
    if (o.level != 0) throw std::invalid_argument("lift_level_1: oracle must be at level 0");
    OraclePolySource src(f.poly(0));
    std::vector<UniCluster> clusters =
        cluster_univariate(src, o.domain[0], Dyadic::pow2(-o.precision[0]), opt);
    std::vector<ClusterOracle> children;
    children.reserve(clusters.size());
    for (const UniCluster& c : clusters) {
        ClusterOracle child = o;
        child.level = 1;
        child.domain[0] = c.cover_box;
        child.multiplicities = {c.multiplicity};
        children.push_back(std::move(child));
    }
    return children;
}

namespace {

// Upper bound on max_i |b_i| over the prefix polydisc.
mpq_class prefix_norm_upper(const PolyDisc& prefix) {
    Dyadic best;
    for (const Disc& d : prefix) {
        Dyadic c = Dyadic::sqrt_upper(d.cx * d.cx + d.cy * d.cy, 64) + d.r;
        if (c > best) best = c;
    }
    return best.to_mpq();
}

}  // namespace

LiftOutcome lift_level_n(const TriangularSystem& f, const ClusterOracle& o,
                         const ClusterOptions& opt) {
    int ell = o.level;
    if (ell < 1 || ell >= f.dimension())
        throw std::invalid_argument("lift_level_n: level must be in [1, n)");
    const OraclePolynomial& fnext = f.poly(ell);

    PolyBox prefix_boxes(o.domain.begin(), o.domain.begin() + ell);
    PolyDisc prefix = containing_disc(prefix_boxes);

    // Two guard bits below the requested cluster radius for this level.
    long target = o.precision[static_cast<size_t>(ell)];
    mpq_class delta_L = Dyadic::pow2(-(target + 2)).to_mpq();
    unsigned d_max = fnext.max_degree();
    mpq_class norm = fnext.norm_upper(64).to_mpq();
    mpq_class M = prefix_norm_upper(prefix) + 1;
    PrecisionBudget budget = required_precisions(delta_L, d_max, norm, M, ell + 1);
    long l_star = budget.delta_f_bits();

    IntervalPolynomial F = fnext.specialize_interval(prefix, l_star);
    FixedPolySource src(std::move(F));

    LiftOutcome out;
    try {
        std::vector<UniCluster> clusters = cluster_univariate(
            src, o.domain[static_cast<size_t>(ell)], Dyadic::pow2(-target), opt);
        out.success = true;
        out.children.reserve(clusters.size());
        for (const UniCluster& c : clusters) {
            ClusterOracle child = o;
            child.level = ell + 1;
            child.domain[static_cast<size_t>(ell)] = c.cover_box;
            child.multiplicities.push_back(c.multiplicity);
            out.children.push_back(std::move(child));
        }
    } catch (const PrecisionExhausted&) {
        out.success = false;
        out.children = {o};
    }
    return out;
}

}  // namespace tricluster
