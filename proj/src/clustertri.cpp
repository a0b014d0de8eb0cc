#include "tricluster/clustertri.hpp"

#include <atomic>
#include <chrono>
#include <deque>
#include <future>

#include "tricluster/pellet.hpp"

namespace tricluster {

namespace {

LiftOutcome lift_one(const TriangularSystem& f, const ClusterOracle& o,
                     const ClusterOptions& copt) {
    if (o.level == 0) {
        LiftOutcome out;
        out.success = true;
        out.children = lift_level_1(f, o, copt);
        return out;
    }
    return lift_level_n(f, o, copt);
}

}  // namespace

SolveResult cluster_tri(const TriangularSystem& f, const PolyBox& roi, long L,
                        const SolveOptions& opt) {
    if (L <= 1) throw std::invalid_argument("cluster_tri: L must be > 1");
    int n = f.dimension();
    if (static_cast<int>(roi.size()) != n)
        throw std::invalid_argument("cluster_tri: roi dimension mismatch");

    auto t0 = std::chrono::steady_clock::now();
    PelletCounters before = pellet_counters();

    ClusterOptions copt;
    copt.max_precision_bits = opt.max_precision_log2;

    SolveResult result;
    std::deque<ClusterOracle> queue;
    queue.push_back(ClusterOracle{0, roi, std::vector<long>(static_cast<size_t>(n), L), {}});

    auto handle = [&](ClusterOracle&& o, LiftOutcome&& lifted) {
        if (lifted.success) {
            for (ClusterOracle& child : lifted.children) {
                for (long p : child.precision)
                    result.stats.max_precision_bits = std::max(result.stats.max_precision_bits, p);
                queue.push_back(std::move(child));
            }
            return;
        }
        result.stats.lift_failures += 1;
        for (int i = 0; i < o.level; ++i) {
            o.precision[static_cast<size_t>(i)] *= 2;
            if (o.precision[static_cast<size_t>(i)] > opt.max_precision_log2)
                throw SolveAbort("precision cap exceeded while refining a cluster oracle", o);
        }
        o.level = 0;
        queue.push_back(std::move(o));
    };

    while (!queue.empty()) {
        // Collect this frontier; full-height oracles retire to the result.
        std::vector<ClusterOracle> frontier;
        while (!queue.empty()) {
            ClusterOracle o = std::move(queue.front());
            queue.pop_front();
            if (o.level == n) {
                SolvedCluster sc;
                sc.polydisc = tower_of(o).polydisc;
                sc.multiplicities = o.multiplicities;
                sc.total = total_multiplicity(o, n);
                result.clusters.push_back(std::move(sc));
            } else {
                frontier.push_back(std::move(o));
            }
        }
        if (frontier.empty()) break;

        if (opt.threads <= 1 || frontier.size() == 1) {
            for (ClusterOracle& o : frontier) {
                LiftOutcome lifted = lift_one(f, o, copt);
                handle(std::move(o), std::move(lifted));
            }
        } else {
            // Deterministic parallel mode: lifts are pure and independent;
            // outcomes are merged in frontier order.
            std::vector<LiftOutcome> outcomes(frontier.size());
            std::atomic<size_t> cursor{0};
            size_t workers = std::min<size_t>(static_cast<size_t>(opt.threads), frontier.size());
            std::vector<std::future<void>> futs;
            futs.reserve(workers);
            for (size_t w = 0; w < workers; ++w)
                futs.push_back(std::async(std::launch::async, [&]() {
                    for (size_t i = cursor.fetch_add(1); i < frontier.size();
                         i = cursor.fetch_add(1))
                        outcomes[i] = lift_one(f, frontier[i], copt);
                }));
            for (auto& fu : futs) fu.get();
            for (size_t i = 0; i < frontier.size(); ++i)
                handle(std::move(frontier[i]), std::move(outcomes[i]));
        }
    }

    PelletCounters after = pellet_counters();
    result.stats.t_star_calls = after.t_star_calls - before.t_star_calls;
    result.stats.graeffe_iterations = after.graeffe_iterations - before.graeffe_iterations;
    result.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace tricluster
