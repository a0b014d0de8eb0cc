#include "tricluster/pellet.hpp"

#include <atomic>
#include <cmath>
#include <vector>

namespace tricluster {

namespace {
std::atomic<std::uint64_t> g_tstar_calls{0};
std::atomic<std::uint64_t> g_graeffe_iters{0};
}

PelletCounters pellet_counters() {
    return {g_tstar_calls.load(), g_graeffe_iters.load()};
}

void reset_pellet_counters() {
    g_tstar_calls.store(0);
    g_graeffe_iters.store(0);
}

int graeffe_rounds(int d) {
    double inner = 1.0 + std::log2(static_cast<double>(d) + 1.0);
    return 4 + static_cast<int>(std::ceil(std::log2(inner)));
}

PelletOutcome t_star(const IntervalPolynomial& f, const Disc& delta) {
    g_tstar_calls.fetch_add(1, std::memory_order_relaxed);
    int d = f.degree();
    if (d < 1) return PelletOutcome::insufficient();
    // An ambiguous leading coefficient makes the degree ambiguous, which is a
    // precision problem under the regularity assumption.
    if (f.coeffs.back().contains_zero()) return PelletOutcome::insufficient();

    size_t work_bits = 64;
    for (const ComplexInterval& c : f.coeffs)
        work_bits = std::max(work_bits, c.mantissa_bits());
    work_bits += 32;

    ComplexInterval center = ComplexInterval::point(delta.cx, delta.cy);
    IntervalPolynomial g = taylor_shift(f, center, delta.r).coarsen(work_bits);

    int rounds = graeffe_rounds(d);
    for (int i = 0; i < rounds; ++i) {
        g = graeffe(g).coarsen(work_bits);
        g_graeffe_iters.fetch_add(1, std::memory_order_relaxed);
    }

    std::vector<Dyadic> lower(g.coeffs.size()), upper(g.coeffs.size());
    Dyadic sum_lower, sum_upper;
    for (size_t k = 0; k < g.coeffs.size(); ++k) {
        lower[k] = g.coeffs[k].abs_lower();
        upper[k] = g.coeffs[k].abs_upper();
        sum_lower += lower[k];
        sum_upper += upper[k];
    }

    bool all_resolved = true;
    for (size_t k = 0; k < g.coeffs.size(); ++k) {
        Dyadic others_upper = sum_upper - upper[k];
        Dyadic others_lower = sum_lower - lower[k];
        if (lower[k] > others_upper) return PelletOutcome::counted(static_cast<int>(k));
        // k is settled as non-dominating if the others provably reach |g_k|,
        // or if |g_k| is provably within a factor two of their sum (the soft
        // comparison's "near" verdict).
        bool fails = others_lower >= upper[k];
        bool near = others_lower.mul_pow2(1) > upper[k] && others_upper < lower[k].mul_pow2(1);
        if (!fails && !near) all_resolved = false;
    }
    return all_resolved ? PelletOutcome::near_boundary() : PelletOutcome::insufficient();
}

PelletOutcome count_natural(const IntervalPolynomial& f, const Disc& delta) {
    PelletOutcome inner = t_star(f, delta);
    if (inner.status == PelletStatus::insufficient_precision) return inner;
    PelletOutcome outer = t_star(f, delta.scaled(Dyadic(3)));
    if (outer.status == PelletStatus::insufficient_precision) return outer;
    if (inner.is_count() && outer.is_count() && inner.count == outer.count) return inner;
    return PelletOutcome::near_boundary();
}

}  // namespace tricluster
