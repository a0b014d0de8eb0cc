#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tricluster/tower.hpp"

namespace tricluster {

struct SolveStats {
    std::uint64_t t_star_calls = 0;
    std::uint64_t graeffe_iterations = 0;
    std::uint64_t lift_failures = 0;
    long max_precision_bits = 0;
    double wall_seconds = 0.0;
};

struct SolvedCluster {
    PolyDisc polydisc;
    std::vector<int> multiplicities;
    long long total = 0;
};

struct SolveResult {
    std::vector<SolvedCluster> clusters;
    SolveStats stats;
};

struct SolveOptions {
    long max_precision_log2 = 1L << 16;
    int threads = 1;
};

/// Raised when precision doubling passes the configured cap (the halting
/// guarantee only covers regular systems); carries the stuck oracle.
class SolveAbort : public std::runtime_error {
public:
    SolveAbort(std::string what, ClusterOracle o)
        : std::runtime_error(std::move(what)), stuck(std::move(o)) {}
    ClusterOracle stuck;
};

/// Queue-driven lift of cluster oracles from level 0 to level n, doubling
/// prefix precision and resetting to level 0 on a failed lift. The output
/// solves the local clustering problem for (f, roi, 2^-L): pairwise disjoint
/// natural polydiscs of radius <= 2^-L covering every root in roi, containing
/// only roots of 2*roi, with exact total multiplicities.
SolveResult cluster_tri(const TriangularSystem& f, const PolyBox& roi, long L,
                        const SolveOptions& opt = {});

}  // namespace tricluster
