#include "doctest.h"

#include <algorithm>

#include "test_support.hpp"
#include "tricluster/clustertri.hpp"
#include "tricluster/generator.hpp"
#include "tricluster/parser.hpp"
#include "tricluster/report.hpp"
#include "tricluster/unicluster.hpp"

using namespace tricluster;

namespace {

long long sum_totals(const SolveResult& r) {
    long long s = 0;
    for (const SolvedCluster& c : r.clusters) s += c.total;
    return s;
}

}  // namespace

TEST_CASE("paper system g: four simple towers") {
    ParsedSystem ps = parse_system("f1 = (z1-1/2)*(z1+1/2)\nf2 = (z2-4*z1^2)*z2\n");
    TriangularSystem sys = ps.to_system();
    PolyBox roi{Box(Dyadic(0), Dyadic(0), Dyadic(8)), Box(Dyadic(0), Dyadic(0), Dyadic(8))};
    SolveResult res = cluster_tri(sys, roi, 10);
    REQUIRE(res.clusters.size() == 4);
    std::vector<std::pair<double, double>> want{{-0.5, 0}, {-0.5, 1}, {0.5, 0}, {0.5, 1}};
    for (auto [x, y] : want) {
        bool found = false;
        for (const SolvedCluster& c : res.clusters) {
            double dx = c.polydisc[0].cx.to_double() - x;
            double dy = c.polydisc[1].cx.to_double() - y;
            if (std::abs(dx) < 1.0 / 512 && std::abs(dy) < 1.0 / 512) {
                found = true;
                CHECK(c.total == 1);
                CHECK(c.polydisc[0].r <= Dyadic::pow2(-10));
                CHECK(c.polydisc[1].r <= Dyadic::pow2(-10));
            }
        }
        CHECK(found);
    }
    // pairwise disjoint polydiscs
    for (size_t i = 0; i < res.clusters.size(); ++i)
        for (size_t j = i + 1; j < res.clusters.size(); ++j) {
            bool sep = false;
            for (int d = 0; d < 2; ++d)
                if (!res.clusters[i].polydisc[d].intersects(res.clusters[j].polydisc[d])) sep = true;
            CHECK(sep);
        }
}

TEST_CASE("paper system h: tower totals 3x3 and 3x1") {
    ParsedSystem ps = parse_system(
        "f1 = (z1-1/8)^2*(z1+1/8)\n"
        "f2 = (z2+8*z1^2)^2*(z2-1)*z2\n");
    TriangularSystem sys = ps.to_system();
    PolyBox b1{Box(Dyadic(0), Dyadic(0), Dyadic(1, -2)), Box(Dyadic(0), Dyadic(0), Dyadic(1, -2))};
    SolveResult r1 = cluster_tri(sys, b1, 12);
    CHECK(sum_totals(r1) == 9);

    PolyBox b2{Box(Dyadic(0), Dyadic(0), Dyadic(1, -2)), Box(Dyadic(1), Dyadic(0), Dyadic(1, -2))};
    SolveResult r2 = cluster_tri(sys, b2, 12);
    CHECK(sum_totals(r2) == 3);
}

TEST_CASE("dimension one reduces to univariate clustering") {
    ParsedSystem ps = parse_system("f1 = (z1-1)*(z1+1)*(z1-3)\n");
    TriangularSystem sys = ps.to_system();
    PolyBox roi{Box(Dyadic(0), Dyadic(0), Dyadic(16))};
    SolveResult res = cluster_tri(sys, roi, 12);
    REQUIRE(res.clusters.size() == 3);

    OraclePolySource src(sys.poly(0));
    auto uni = cluster_univariate(src, roi[0], Dyadic::pow2(-12));
    REQUIRE(uni.size() == 3);
    // identical multiset of (center, multiplicity)
    for (const UniCluster& u : uni) {
        bool found = false;
        for (const SolvedCluster& c : res.clusters)
            if (c.polydisc[0].cx == u.isolator.cx && c.polydisc[0].cy == u.isolator.cy &&
                c.total == u.multiplicity)
                found = true;
        CHECK(found);
    }
}

TEST_CASE("identical inputs give identical results, sequential or parallel") {
    GeneratorSpec spec;
    spec.type = {2, 2};
    spec.seed = 3;
    ParsedSystem ps = gen_random(spec);
    TriangularSystem sys = ps.to_system();
    PolyBox roi{Box(Dyadic(0), Dyadic(0), Dyadic(1 << 12)), Box(Dyadic(0), Dyadic(0), Dyadic(1 << 12))};

    SolveResult a = cluster_tri(sys, roi, 30);
    SolveResult b = cluster_tri(sys, roi, 30);
    SolveOptions par;
    par.threads = 4;
    SolveResult c = cluster_tri(sys, roi, 30, par);

    std::string ja = result_to_json(a, roi, -30);
    std::string jb = result_to_json(b, roi, -30);
    std::string jc = result_to_json(c, roi, -30);
    // stats differ in wall time; compare the cluster payloads
    auto strip = [](const std::string& s) { return s.substr(0, s.find("\"stats\"")); };
    CHECK(strip(ja) == strip(jb));
    CHECK(strip(ja) == strip(jc));
}

TEST_CASE("solving finer nests inside the coarse clusters") {
    ParsedSystem ps = parse_system("f1 = (z1-1/2)*(z1+1/2)\nf2 = (z2-4*z1^2)*z2\n");
    TriangularSystem sys = ps.to_system();
    PolyBox roi{Box(Dyadic(0), Dyadic(0), Dyadic(8)), Box(Dyadic(0), Dyadic(0), Dyadic(8))};
    SolveResult coarse = cluster_tri(sys, roi, 8);
    SolveResult fine = cluster_tri(sys, roi, 24);
    REQUIRE(coarse.clusters.size() == fine.clusters.size());
    for (const SolvedCluster& f : fine.clusters) {
        bool inside_some = false;
        for (const SolvedCluster& c : coarse.clusters) {
            bool inside = true;
            for (int d = 0; d < 2; ++d) {
                Disc big = c.polydisc[d].scaled(Dyadic(3));
                Dyadic dx = f.polydisc[d].cx - big.cx, dy = f.polydisc[d].cy - big.cy;
                Dyadic room = big.r - f.polydisc[d].r;
                if (room.sign() < 0 || dx * dx + dy * dy > room * room) inside = false;
            }
            if (inside) {
                inside_some = true;
                CHECK(f.total == c.total);
            }
        }
        CHECK(inside_some);
    }
}

TEST_CASE("bezout count on a random dense system") {
    GeneratorSpec spec;
    spec.type = {2, 2};
    spec.seed = 1;
    ParsedSystem ps = gen_random(spec);
    TriangularSystem sys = ps.to_system();
    PolyBox roi{Box(Dyadic(0), Dyadic(0), Dyadic(1000000)), Box(Dyadic(0), Dyadic(0), Dyadic(1000000))};
    SolveResult res = cluster_tri(sys, roi, 53);
    CHECK(sum_totals(res) == 4);
    for (const SolvedCluster& c : res.clusters) {
        CHECK(c.polydisc[0].r <= Dyadic::pow2(-53));
        CHECK(c.polydisc[1].r <= Dyadic::pow2(-53));
    }
}

TEST_CASE("max precision cap aborts with the stuck oracle") {
    // z1^2 has a non-simple root; an absurdly low cap trips immediately
    ParsedSystem ps = parse_system("f1 = z1*z1\nf2 = z2*z1 + 1\n");  // non-regular at z1=0
    TriangularSystem sys = ps.to_system();
    PolyBox roi{Box(Dyadic(0), Dyadic(0), Dyadic(4)), Box(Dyadic(0), Dyadic(0), Dyadic(4))};
    SolveOptions opt;
    opt.max_precision_log2 = 256;
    CHECK_THROWS_AS(cluster_tri(sys, roi, 10, opt), SolveAbort);
}
