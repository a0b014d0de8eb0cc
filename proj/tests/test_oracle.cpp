#include "doctest.h"

#include "test_support.hpp"
#include "tricluster/oracle.hpp"

using namespace tricluster;

namespace {

// containment of an exact rational in a grid interval
bool grid_contains(const DyadicInterval& g, const mpq_class& x) {
    return g.lo().to_mpq() <= x && x <= g.hi().to_mpq();
}

}  // namespace

TEST_CASE("rational oracle: width contract and containment") {
    OracleNumber third = OracleNumber::rational(mpq_class(1, 3));
    ComplexGrid q = third.query(2);
    CHECK(q.is_lbit(2));
    CHECK(grid_contains(q.re, mpq_class(1, 3)));
    CHECK(grid_contains(q.im, 0));

    OracleNumber threequarters = OracleNumber::decimal("0.75");
    ComplexGrid q2 = threequarters.query(10);
    CHECK(q2.is_lbit(10));
    CHECK(grid_contains(q2.re, mpq_class(3, 4)));
}

TEST_CASE("sqrt(2) oracle encloses the value") {
    OracleNumber r2 = OracleNumber::sqrt_of(2);
    ComplexGrid q = r2.query(4);
    Dyadic lo = q.re.lo(), hi = q.re.hi();
    CHECK(lo * lo <= Dyadic(2));
    CHECK(hi * hi >= Dyadic(2));
    CHECK(q.is_lbit(4));
    // inside [1.375, 1.4375 + 2^-4]
    CHECK(lo >= Dyadic::parse("1.375"));
    CHECK(hi <= Dyadic::parse("1.4375") + Dyadic::pow2(-4));
}

TEST_CASE("oracle nesting across increasing precision") {
    std::vector<OracleNumber> oracles{
        OracleNumber::rational(mpq_class(1, 3)),
        OracleNumber::rational(mpq_class(-22, 7)),
        OracleNumber::sqrt_of(2),
        OracleNumber::sqrt_of(5) * OracleNumber::rational(mpq_class(1, 3)) -
            OracleNumber::integer(2),
        OracleNumber::dyadic(Dyadic(3, -2)),
    };
    for (auto& o : oracles) {
        ComplexGrid prev = o.query(3);
        for (long L : {5, 10, 20, 47, 90, 200}) {
            ComplexGrid cur = o.query(L);
            CHECK(cur.is_lbit(L));
            CHECK(prev.contains(cur));
            prev = cur;
        }
        // a later coarse query returns a cached fine interval, still nested
        ComplexGrid coarse = o.query(4);
        CHECK(prev.contains(coarse));
    }
}

TEST_CASE("composite oracles enclose exact arithmetic") {
    OracleNumber a = OracleNumber::rational(mpq_class(3, 7));
    OracleNumber b = OracleNumber::rational(mpq_class(-5, 11), mpq_class(2, 3));
    OracleNumber c = a * b + b - (-a);
    CHECK(c.is_exact_rational());
    auto [re, im] = c.exact_value();
    mpq_class ere = mpq_class(3, 7) * mpq_class(-5, 11) + mpq_class(-5, 11) + mpq_class(3, 7);
    mpq_class eim = mpq_class(3, 7) * mpq_class(2, 3) + mpq_class(2, 3);
    CHECK(re == ere);
    CHECK(im == eim);
    ComplexGrid q = c.query(80);
    CHECK(grid_contains(q.re, ere));
    CHECK(grid_contains(q.im, eim));

    OracleNumber two = OracleNumber::sqrt_of(2) * OracleNumber::sqrt_of(2);
    CHECK_FALSE(two.is_exact_rational());
    ComplexGrid q2 = two.query(60);
    CHECK(grid_contains(q2.re, 2));
}

TEST_CASE("algebraic oracle with exact rational root inside") {
    // x^2 - 4 isolated in (0, 5): bisection lands exactly on 2
    OracleNumber o = OracleNumber::algebraic({-4, 0, 1}, 0, 5);
    ComplexGrid q = o.query(40);
    CHECK(grid_contains(q.re, 2));
    CHECK(q.is_lbit(40));
}
