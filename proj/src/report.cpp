#include "tricluster/report.hpp"

#include <sstream>

#include "json.hpp"

namespace tricluster {

namespace {

using nlohmann::json;

json dyadic_json(const Dyadic& d) {
    return json{{"m", d.mantissa().get_str()}, {"e", d.exponent()}};
}

Dyadic dyadic_from(const json& j) {
    return Dyadic(mpz_class(j.at("m").get<std::string>(), 10), j.at("e").get<long>());
}

json box_json(const Box& b) {
    return json{{"cx", dyadic_json(b.cx)}, {"cy", dyadic_json(b.cy)}, {"w", dyadic_json(b.w)}};
}

Box box_from(const json& j) {
    return Box(dyadic_from(j.at("cx")), dyadic_from(j.at("cy")), dyadic_from(j.at("w")));
}

}  // namespace

std::string result_to_json(const SolveResult& res, const PolyBox& roi, long epsilon_log2) {
    json doc;
    doc["epsilon_log2"] = epsilon_log2;
    doc["roi"] = json::array();
    for (const Box& b : roi) doc["roi"].push_back(box_json(b));
    doc["clusters"] = json::array();
    for (const SolvedCluster& c : res.clusters) {
        json jc;
        jc["center"] = json::array();
        jc["radius"] = json::array();
        for (const Disc& d : c.polydisc) {
            jc["center"].push_back(json::array({dyadic_json(d.cx), dyadic_json(d.cy)}));
            jc["radius"].push_back(dyadic_json(d.r));
        }
        jc["multiplicities"] = c.multiplicities;
        jc["total"] = c.total;
        doc["clusters"].push_back(std::move(jc));
    }
    doc["stats"] = json{{"t_star_calls", res.stats.t_star_calls},
                        {"graeffe_iterations", res.stats.graeffe_iterations},
                        {"lift_failures", res.stats.lift_failures},
                        {"max_precision_bits", res.stats.max_precision_bits},
                        {"wall_seconds", res.stats.wall_seconds}};
    return doc.dump(2);
}

std::string result_to_text(const SolveResult& res, const PolyBox& roi, long epsilon_log2) {
    std::ostringstream os;
    os << "epsilon = 2^" << epsilon_log2 << ", roi dimension " << roi.size() << "\n";
    long long total = 0;
    for (size_t i = 0; i < res.clusters.size(); ++i) {
        const SolvedCluster& c = res.clusters[i];
        os << "cluster " << i + 1 << ": total multiplicity " << c.total << " (";
        for (size_t k = 0; k < c.multiplicities.size(); ++k)
            os << (k ? "x" : "") << c.multiplicities[k];
        os << ")\n";
        for (size_t d = 0; d < c.polydisc.size(); ++d) {
            const Disc& disc = c.polydisc[d];
            os << "  z" << d + 1 << " in disc center (" << disc.cx.to_double() << ", "
               << disc.cy.to_double() << ") radius " << disc.r.to_double() << "\n";
        }
        total += c.total;
    }
    os << res.clusters.size() << " clusters, total multiplicity " << total << "\n";
    os << "stats: " << res.stats.t_star_calls << " Pellet tests, "
       << res.stats.graeffe_iterations << " root-squaring rounds, " << res.stats.lift_failures
       << " lift failures, max precision " << res.stats.max_precision_bits << " bits, "
       << res.stats.wall_seconds << " s\n";
    return os.str();
}

StoredResult result_from_json(const std::string& text) {
    json doc = json::parse(text);
    StoredResult out;
    out.epsilon_log2 = doc.at("epsilon_log2").get<long>();
    for (const json& jb : doc.at("roi")) out.roi.push_back(box_from(jb));
    for (const json& jc : doc.at("clusters")) {
        SolvedCluster c;
        const json& centers = jc.at("center");
        const json& radii = jc.at("radius");
        for (size_t d = 0; d < centers.size(); ++d) {
            Disc disc(dyadic_from(centers[d][0]), dyadic_from(centers[d][1]),
                      dyadic_from(radii[d]));
            c.polydisc.push_back(disc);
        }
        c.multiplicities = jc.at("multiplicities").get<std::vector<int>>();
        c.total = jc.at("total").get<long long>();
        out.result.clusters.push_back(std::move(c));
    }
    return out;
}

}  // namespace tricluster
