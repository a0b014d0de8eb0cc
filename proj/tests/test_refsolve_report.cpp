#include "doctest.h"

#include "test_support.hpp"
#include "tricluster/clustertri.hpp"
#include "tricluster/parser.hpp"
#include "tricluster/refsolve.hpp"
#include "tricluster/report.hpp"

using namespace tricluster;
namespace rs = tricluster::refsolve;

TEST_CASE("rational pellet counting") {
    rs::QPoly f = rs::QPoly::from_points({{mpq_class(-1, 4), 0}, {0, 0}, {1, 0}});
    CHECK(rs::pellet_count(f, 0, 0, 1) == 2);
    CHECK(rs::pellet_count(f, 0, 0, mpq_class(1, 4)) == 0);
    CHECK(rs::pellet_count(f, mpq_class(1, 2), 0, mpq_class(1, 64)) == 1);
    CHECK(rs::natural_count(f, mpq_class(1, 2), 0, mpq_class(1, 64)) == 1);
    // roots on the boundary cannot be counted
    CHECK(rs::pellet_count(f, 0, 0, mpq_class(1, 2)) == -1);
}

TEST_CASE("reference isolation with multiplicities") {
    // (z - 1/8)^2 (z + 1/8)
    rs::QPoly f = rs::QPoly::from_points(
        {{mpq_class(1, 512), 0}, {mpq_class(-1, 64), 0}, {mpq_class(-1, 8), 0}, {1, 0}});
    auto roots = rs::isolate(f, 0, 0, mpq_class(1, 2), Dyadic::pow2(-40).to_mpq());
    REQUIRE(roots.size() == 2);
    int m_sum = 0;
    for (const auto& r : roots) m_sum += r.mult;
    CHECK(m_sum == 3);
}

TEST_CASE("verify passes on a real solve and flags a tampered result") {
    ParsedSystem ps = parse_system("f1 = (z1-1/2)*(z1+1/2)\nf2 = (z2-4*z1^2)*z2\n");
    TriangularSystem sys = ps.to_system();
    PolyBox roi{Box(Dyadic(0), Dyadic(0), Dyadic(8)), Box(Dyadic(0), Dyadic(0), Dyadic(8))};
    SolveResult res = cluster_tri(sys, roi, 10);
    rs::VerifyReport ok = rs::verify_result(ps, roi, res);
    CHECK(ok.pass);

    SolveResult bad = res;
    bad.clusters[0].multiplicities[0] = 2;
    bad.clusters[0].total = 2;
    rs::VerifyReport flagged = rs::verify_result(ps, roi, bad);
    CHECK_FALSE(flagged.pass);
    CHECK(flagged.details.find("cluster") != std::string::npos);
}

TEST_CASE("verify checks the multiplicity product invariant") {
    ParsedSystem ps = parse_system("f1 = z1\nf2 = z2 - 1\n");
    TriangularSystem sys = ps.to_system();
    PolyBox roi{Box(Dyadic(0), Dyadic(0), Dyadic(4)), Box(Dyadic(0), Dyadic(0), Dyadic(4))};
    SolveResult res = cluster_tri(sys, roi, 10);
    SolveResult bad = res;
    REQUIRE(!bad.clusters.empty());
    bad.clusters[0].total = 5;  // no longer the product of the vector
    CHECK_FALSE(rs::verify_result(ps, roi, bad).pass);
}

TEST_CASE("result documents round trip bit-exactly through json") {
    ParsedSystem ps = parse_system("f1 = 3*z1^2 - 1\n");
    TriangularSystem sys = ps.to_system();
    PolyBox roi{Box(Dyadic(0), Dyadic(0), Dyadic(4))};
    SolveResult res = cluster_tri(sys, roi, 20);
    std::string doc = result_to_json(res, roi, -20);
    StoredResult back = result_from_json(doc);
    CHECK(back.epsilon_log2 == -20);
    REQUIRE(back.roi.size() == 1);
    CHECK(back.roi[0].w == Dyadic(4));
    REQUIRE(back.result.clusters.size() == res.clusters.size());
    for (size_t i = 0; i < res.clusters.size(); ++i) {
        CHECK(back.result.clusters[i].total == res.clusters[i].total);
        CHECK(back.result.clusters[i].polydisc[0].cx == res.clusters[i].polydisc[0].cx);
        CHECK(back.result.clusters[i].polydisc[0].r == res.clusters[i].polydisc[0].r);
    }
    // dyadic serialization is the documented pair form
    CHECK(doc.find("\"m\"") != std::string::npos);
    CHECK(doc.find("\"e\"") != std::string::npos);
}

TEST_CASE("reference solver rejects out-of-scope systems") {
    ParsedSystem irr = parse_system("f1 = z1 - sqrt(2)\n");
    PolyBox roi{Box(Dyadic(0), Dyadic(0), Dyadic(4))};
    CHECK_THROWS_AS(rs::solve_reference(irr, roi, mpq_class(1, 1024)), rs::OracleTooExpensive);

    ParsedSystem big = parse_system("f1 = z1^9 + 1\n");
    CHECK_THROWS_AS(rs::solve_reference(big, roi, mpq_class(1, 1024)), rs::OracleTooExpensive);
}
