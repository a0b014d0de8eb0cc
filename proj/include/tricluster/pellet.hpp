#pragma once

#include <cstdint>

#include "tricluster/dyadic.hpp"
#include "tricluster/opoly.hpp"

namespace tricluster {

/// Result of the soft Pellet counting test.
/// count(m): every polynomial enclosed by the input has exactly m roots
/// (with multiplicity) in the tested disc.
/// near_boundary: the test failed definitively (roots too close to the
/// boundary for any coefficient in the enclosure to dominate).
/// insufficient_precision: interval widths left a comparison undecided.
enum class PelletStatus { count, near_boundary, insufficient_precision };

struct PelletOutcome {
    PelletStatus status;
    int count = -1;

    static PelletOutcome counted(int m) { return {PelletStatus::count, m}; }
    static PelletOutcome near_boundary() { return {PelletStatus::near_boundary, -1}; }
    static PelletOutcome insufficient() { return {PelletStatus::insufficient_precision, -2}; }

    bool is_count() const { return status == PelletStatus::count; }
    bool is_count(int m) const { return is_count() && count == m; }
};

/// Number of root-squaring rounds used by t_star for degree d.
int graeffe_rounds(int d);

/// Soft Pellet test on a disc: shift the disc to the unit disc, amplify with
/// graeffe_rounds(d) root-squaring steps, then look for a coefficient whose
/// magnitude provably dominates the sum of all others.
PelletOutcome t_star(const IntervalPolynomial& f, const Disc& delta);

/// Natural-cluster count: t_star on delta and on 3*delta; a count is reported
/// only when both agree. insufficient_precision from either side wins over
/// near_boundary.
PelletOutcome count_natural(const IntervalPolynomial& f, const Disc& delta);

/// Running totals of t_star invocations (for solver statistics).
struct PelletCounters {
    std::uint64_t t_star_calls;
    std::uint64_t graeffe_iterations;
};
PelletCounters pellet_counters();
void reset_pellet_counters();

}  // namespace tricluster
