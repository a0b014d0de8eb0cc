#include "doctest.h"

#include <algorithm>

#include "test_support.hpp"
#include "tricluster/refsolve.hpp"
#include "tricluster/unicluster.hpp"

using namespace tricluster;

namespace {

OraclePolynomial from_rational_coeffs(const std::vector<mpq_class>& c) {
    OraclePolynomial f(1);
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) f.add_term({static_cast<unsigned>(i)}, OracleNumber::rational(c[i]));
    return f;
}

bool disjoint(const std::vector<UniCluster>& cs) {
    for (size_t i = 0; i < cs.size(); ++i)
        for (size_t j = i + 1; j < cs.size(); ++j)
            if (cs[i].isolator.intersects(cs[j].isolator)) return false;
    return true;
}

}  // namespace

TEST_CASE("double root at the origin is one cluster of multiplicity two") {
    OraclePolynomial f = from_rational_coeffs({0, 0, 1});  // z^2
    OraclePolySource src(f);
    auto cs = cluster_univariate(src, Box(Dyadic(0), Dyadic(0), Dyadic(2)), Dyadic(1, -2));
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].multiplicity == 2);
    CHECK(cs[0].isolator.r <= Dyadic(1, -2));
    Dyadic dist2 = cs[0].isolator.cx * cs[0].isolator.cx + cs[0].isolator.cy * cs[0].isolator.cy;
    CHECK(dist2 <= cs[0].isolator.r * cs[0].isolator.r);
}

TEST_CASE("two simple roots separate at the requested radius") {
    OraclePolynomial f = from_rational_coeffs({mpq_class(-1, 4), 0, 1});  // (z-1/2)(z+1/2)
    OraclePolySource src(f);
    auto cs = cluster_univariate(src, Box(Dyadic(0), Dyadic(0), Dyadic(4)), Dyadic::pow2(-4));
    REQUIRE(cs.size() == 2);
    CHECK(disjoint(cs));
    std::vector<double> centers{cs[0].isolator.cx.to_double(), cs[1].isolator.cx.to_double()};
    std::sort(centers.begin(), centers.end());
    CHECK(centers[0] == doctest::Approx(-0.5).epsilon(0.07));
    CHECK(centers[1] == doctest::Approx(0.5).epsilon(0.07));
    for (const UniCluster& c : cs) {
        CHECK(c.multiplicity == 1);
        CHECK(c.isolator.r <= Dyadic::pow2(-4));
    }
}

TEST_CASE("mignotte-style cluster: joint at coarse radius") {
    // z^8 - (256 z - 1)^3: a triple cluster near 2^-8, five roots of modulus
    // about 2^(24/5)
    OraclePolynomial f(1);
    f.add_term({8}, OracleNumber::integer(1));
    f.add_term({3}, OracleNumber::integer(-(1 << 24)));
    f.add_term({2}, OracleNumber::integer(3 * (1 << 16)));
    f.add_term({1}, OracleNumber::integer(-768));
    f.add_term({0}, OracleNumber::integer(1));
    OraclePolySource src(f);
    auto cs = cluster_univariate(src, Box(Dyadic(0), Dyadic(0), Dyadic(128)), Dyadic::pow2(-4));
    REQUIRE(cs.size() == 6);
    CHECK(disjoint(cs));
    int triples = 0, singles = 0;
    for (const UniCluster& c : cs) {
        if (c.multiplicity == 3) ++triples;
        if (c.multiplicity == 1) ++singles;
    }
    CHECK(triples == 1);
    CHECK(singles == 5);
}

TEST_CASE("refine a point root to high accuracy") {
    OraclePolynomial f = from_rational_coeffs({mpq_class(-1, 2), 1});  // z - 1/2
    OraclePolySource src(f);
    auto cs = cluster_univariate(src, Box(Dyadic(0), Dyadic(0), Dyadic(2)), Dyadic(1, -2));
    REQUIRE(cs.size() == 1);
    auto refined = cluster_refine(cs[0], src, 20);
    REQUIRE(refined.size() == 1);
    CHECK(refined[0].multiplicity == 1);
    CHECK(refined[0].isolator.r <= Dyadic::pow2(-20));
    Dyadic dx = refined[0].isolator.cx - Dyadic(1, -1);
    Dyadic d2 = dx * dx + refined[0].isolator.cy * refined[0].isolator.cy;
    CHECK(d2 <= refined[0].isolator.r * refined[0].isolator.r);
}

TEST_CASE("refine splits a near-double root only below its separation") {
    // z (z - 2^-40): separation 2^-40
    OraclePolynomial f(1);
    f.add_term({2}, OracleNumber::integer(1));
    f.add_term({1}, OracleNumber::dyadic(-Dyadic::pow2(-40)));
    OraclePolySource src(f);
    auto cs = cluster_univariate(src, Box(Dyadic(0), Dyadic(0), Dyadic(2)), Dyadic(1, -3));
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].multiplicity == 2);

    auto joint = cluster_refine(cs[0], src, 10);
    REQUIRE(joint.size() == 1);
    CHECK(joint[0].multiplicity == 2);
    CHECK(joint[0].isolator.r <= Dyadic::pow2(-10));

    auto split = cluster_refine(cs[0], src, 50);
    REQUIRE(split.size() == 2);
    CHECK(split[0].multiplicity == 1);
    CHECK(split[1].multiplicity == 1);
    for (const UniCluster& c : split) CHECK(c.isolator.r <= Dyadic::pow2(-50));
}

TEST_CASE("fixed-precision sources raise PrecisionExhausted when undecidable") {
    ExactInterval wide{Dyadic(-1), Dyadic(1)};
    IntervalPolynomial blurred(std::vector<ComplexInterval>{
        {wide, wide}, {wide, wide}, ComplexInterval::point(Dyadic(1))});
    FixedPolySource src(std::move(blurred));
    CHECK_THROWS_AS(
        cluster_univariate(src, Box(Dyadic(0), Dyadic(0), Dyadic(4)), Dyadic::pow2(-10)),
        PrecisionExhausted);
}

TEST_CASE("emitted clusters re-certify as natural at doubled precision") {
    OraclePolynomial f = from_rational_coeffs({mpq_class(1, 7), mpq_class(-5, 3), 0, 1});
    OraclePolySource src(f);
    auto cs = cluster_univariate(src, Box(Dyadic(0), Dyadic(0), Dyadic(8)), Dyadic::pow2(-8));
    REQUIRE(!cs.empty());
    int total = 0;
    for (const UniCluster& c : cs) {
        total += c.multiplicity;
        const IntervalPolynomial& sharper = src.at_precision(2 * c.precision_bits);
        PelletOutcome again = count_natural(sharper, c.isolator);
        CHECK(again.is_count(c.multiplicity));
    }
    CHECK(total == 3);
}

TEST_CASE("multiset agrees with the exact rational reference (fuzz)") {
    tctest::SplitMix64 rng(47);
    for (int trial = 0; trial < 6; ++trial) {
        int d = 2 + static_cast<int>(rng.next() % 5);
        std::vector<mpq_class> coeffs(static_cast<size_t>(d) + 1);
        std::vector<std::pair<mpq_class, mpq_class>> qcoeffs;
        for (int i = 0; i <= d; ++i) {
            long long v = rng.uniform_signed(64);
            if (i == d && v == 0) v = 1;
            coeffs[static_cast<size_t>(i)] = v;
        }
        OraclePolynomial f = from_rational_coeffs(coeffs);
        if (f.degree_in(0) < 1) continue;
        for (int i = 0; i <= d; ++i) qcoeffs.push_back({coeffs[static_cast<size_t>(i)], 0});

        OraclePolySource src(f);
        Box roi(Dyadic(0), Dyadic(0), Dyadic(1 << 9));
        auto mine = cluster_univariate(src, roi, Dyadic::pow2(-30));

        auto ref = refsolve::isolate(refsolve::QPoly::from_points(qcoeffs), 0, 0,
                                     mpq_class(1 << 10), Dyadic::pow2(-44).to_mpq());
        // every reference root lands in exactly one cluster; totals match
        int assigned = 0;
        for (const UniCluster& c : mine) {
            int inside = 0;
            for (const auto& r : ref) {
                mpq_class dx = r.cx - c.isolator.cx.to_mpq(), dy = r.cy - c.isolator.cy.to_mpq();
                mpq_class rr = c.isolator.r.to_mpq() - r.r;
                if (rr >= 0 && dx * dx + dy * dy <= rr * rr) inside += r.mult;
            }
            CHECK(inside == c.multiplicity);
            assigned += inside;
        }
        int total_ref = 0;
        for (const auto& r : ref) total_ref += r.mult;
        CHECK(assigned == total_ref);
    }
}
