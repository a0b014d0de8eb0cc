#pragma once

#include <vector>

#include "tricluster/opoly.hpp"
#include "tricluster/unicluster.hpp"

namespace tricluster {

/// Unit of work of the solver: a polybox domain whose first `level`
/// components certify a tower of natural clusters with the recorded
/// per-level multiplicities. precision[i] is the target accuracy (bits)
/// for level i+1.
struct ClusterOracle {
    int level = 0;
    PolyBox domain;
    std::vector<long> precision;
    std::vector<int> multiplicities;
};

/// A certified tower: nested natural clusters, one per level; the total
/// multiplicity of the top cluster is the product of the entries of m.
struct Tower {
    PolyDisc polydisc;
    std::vector<int> multiplicities;
};

long long total_multiplicity(const std::vector<int>& m);
inline long long total_multiplicity(const Tower& t) { return total_multiplicity(t.multiplicities); }
/// Requires a full-height oracle (level == dimension).
long long total_multiplicity(const ClusterOracle& o, int dimension);

/// The tower certified by a full-height oracle.
Tower tower_of(const ClusterOracle& o);

/// Lifts a level-0 oracle by clustering f_1 over the first domain component.
/// The coefficient oracles are indefinitely refinable, so this cannot fail
/// short of the precision cap.
std::vector<ClusterOracle> lift_level_1(const TriangularSystem& f, const ClusterOracle& o,
                                        const ClusterOptions& opt = {});

struct LiftOutcome {
    bool success = false;
    std::vector<ClusterOracle> children;
};

/// Lifts a level-l oracle (1 <= l < n) by specializing f_{l+1} on the prefix
/// polydisc at the precision budgeted from the target accuracy, then
/// clustering the resulting fixed interval polynomial. Failure returns the
/// unchanged oracle so the caller can retry at doubled prefix precision.
LiftOutcome lift_level_n(const TriangularSystem& f, const ClusterOracle& o,
                         const ClusterOptions& opt = {});

}  // namespace tricluster
