#include "doctest.h"

#include "test_support.hpp"
#include "tricluster/bounds.hpp"

using namespace tricluster;

TEST_CASE("beta power sums") {
    CHECK(beta(2, Dyadic(1)) == Dyadic(3));
    CHECK(beta(3, Dyadic(1)) == Dyadic(4));
    CHECK(beta(2, Dyadic(3)) == Dyadic(13));
    CHECK(beta(0, Dyadic(17)) == Dyadic(1));
    CHECK(beta(0, Dyadic(0)) == Dyadic(1));
    CHECK(beta(3, Dyadic(1, -1)) == Dyadic(15, -3));  // 1 + 1/2 + 1/4 + 1/8
}

TEST_CASE("specialized norm bound: running example 18 <= 52") {
    // ||f(b_[2])|| = 18 <= ||f|| beta(3,1) beta(2,3) = 1 * 4 * 13
    Dyadic lhs(18);
    Dyadic rhs = Dyadic(1) * beta(3, Dyadic(1)) * beta(2, Dyadic(3));
    CHECK(rhs == Dyadic(52));
    CHECK(lhs <= rhs);
}

TEST_CASE("perturbation bound basics") {
    // all perturbations zero -> bound zero
    CHECK(perturbation_bound(Dyadic(1), {1}, {Dyadic(0)}, Dyadic(0), {Dyadic(0)}, 1).is_zero());

    // n = 1, f = z at b = 0 with point perturbation e: bound e (1 + e)
    Dyadic e = Dyadic::pow2(-6);
    Dyadic bound = perturbation_bound(Dyadic(1), {1}, {Dyadic(0)}, Dyadic(0), {e}, 1);
    CHECK(bound == e * (Dyadic(1) + e));
    // actual |f(b) - f(b~)| = e
    CHECK(e <= bound);
}

TEST_CASE("perturbation bound dominates sampled errors on the running example") {
    // f = x y + (x^3 - 1) y^2 z + (x^2 - y^2) z^3, ||f|| = 1, d = (3, 2, 3),
    // b = (-1, 3), all perturbations 2^-20, k = 2.
    Dyadic delta = Dyadic::pow2(-20);
    std::vector<unsigned> dseq{3, 2, 3};
    std::vector<Dyadic> babs{Dyadic(1), Dyadic(3)};
    std::vector<Dyadic> dbs{delta, delta};
    Dyadic bound = perturbation_bound(Dyadic(1), dseq, babs, delta, dbs, 2);

    tctest::SplitMix64 rng(43);
    auto coeff_of = [&](const Dyadic& px, const Dyadic& py, int which) {
        // specialized coefficients of z^0, z^1, z^3 at (x, y) = (px, py)
        switch (which) {
            case 0: return px * py;
            case 1: return (px * px * px - Dyadic(1)) * py * py;
            default: return px * px - py * py;
        }
    };
    for (int trial = 0; trial < 100; ++trial) {
        auto jitter = [&]() { return Dyadic(rng.uniform_signed(1 << 20), -40); };  // |.| <= 2^-20
        Dyadic xt = Dyadic(-1) + jitter(), yt = Dyadic(3) + jitter();
        Dyadic cf = jitter();  // coefficient perturbation applied to every term
        Dyadic worst;
        for (int which : {0, 1, 2}) {
            Dyadic exact = coeff_of(Dyadic(-1), Dyadic(3), which);
            Dyadic pert = coeff_of(xt, yt, which) + cf;
            Dyadic err = (exact - pert).abs();
            if (err > worst) worst = err;
        }
        CHECK(worst <= bound);
    }
}

TEST_CASE("required precisions: worked threshold cases") {
    // huge delta_L: the point budget caps at 1
    PrecisionBudget huge = required_precisions(mpq_class(1 << 20), 2, 1, 2, 2);
    CHECK(huge.delta_b_max == 1);

    // n=2, d=1, ||f||=1, M=2: (d+1) M^d = 4, both denominators 8
    PrecisionBudget b1 = required_precisions(mpq_class(1, 1024), 1, 1, 2, 2);
    CHECK(b1.delta_f_max == mpq_class(1, 8192));
    CHECK(b1.delta_b_max == mpq_class(1, 8192));

    // n=2, d=2, ||f||=4, M=2, delta_L = 2^-10: denominators 24 and 192
    PrecisionBudget b2 = required_precisions(mpq_class(1, 1024), 2, 4, 2, 2);
    CHECK(b2.delta_f_max == mpq_class(1, 1024 * 24));
    CHECK(b2.delta_b_max == mpq_class(1, 1024 * 192));

    CHECK_THROWS(required_precisions(mpq_class(1), 2, 1, 2, 1));  // needs n > 1
}

TEST_CASE("bits_for is exact on powers of two and monotone") {
    CHECK(bits_for(mpq_class(1, 8)) == 3);
    CHECK(bits_for(mpq_class(1)) == 0);
    CHECK(bits_for(mpq_class(3, 16)) == 3);   // 2^-3 <= 3/16
    CHECK(bits_for(mpq_class(1, 1000)) == 10);  // 2^-10 <= 1/1000
}
