#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tricluster/clustertri.hpp"
#include "tricluster/bounds.hpp"
#include "tricluster/generator.hpp"
#include "tricluster/parser.hpp"
#include "tricluster/refsolve.hpp"
#include "tricluster/report.hpp"

namespace py = pybind11;
using namespace tricluster;

namespace {

PolyBox roi_from_python(const py::object& roi, int dimension) {
    if (py::isinstance<py::str>(roi)) {
        std::string name = roi.cast<std::string>();
        long width = name == "global" ? 1000000 : name == "local" ? 2 : 0;
        if (width == 0) throw std::invalid_argument("roi string must be 'global' or 'local'");
        PolyBox b;
        for (int i = 0; i < dimension; ++i) b.push_back(Box(Dyadic(0), Dyadic(0), Dyadic(width)));
        return b;
    }
    PolyBox b;
    for (const auto& item : roi.cast<py::sequence>()) {
        auto t = item.cast<py::sequence>();
        b.push_back(Box(Dyadic::parse(py::str(t[0]).cast<std::string>()),
                        Dyadic::parse(py::str(t[1]).cast<std::string>()),
                        Dyadic::parse(py::str(t[2]).cast<std::string>())));
    }
    return b;
}

py::dict dyadic_dict(const Dyadic& d) {
    py::dict out;
    out["m"] = d.mantissa().get_str();
    out["e"] = d.exponent();
    out["value"] = d.to_double();
    return out;
}

py::dict result_dict(const SolveResult& res, const PolyBox& roi, long epsilon_log2) {
    py::dict out;
    py::list clusters;
    for (const SolvedCluster& c : res.clusters) {
        py::dict jc;
        py::list center, radius;
        for (const Disc& d : c.polydisc) {
            center.append(py::make_tuple(dyadic_dict(d.cx), dyadic_dict(d.cy)));
            radius.append(dyadic_dict(d.r));
        }
        jc["center"] = center;
        jc["radius"] = radius;
        jc["multiplicities"] = c.multiplicities;
        jc["total"] = c.total;
        clusters.append(jc);
    }
    out["clusters"] = clusters;
    out["epsilon_log2"] = epsilon_log2;
    py::dict stats;
    stats["t_star_calls"] = res.stats.t_star_calls;
    stats["graeffe_iterations"] = res.stats.graeffe_iterations;
    stats["lift_failures"] = res.stats.lift_failures;
    stats["max_precision_bits"] = res.stats.max_precision_bits;
    stats["wall_seconds"] = res.stats.wall_seconds;
    out["stats"] = stats;
    out["json"] = result_to_json(res, roi, epsilon_log2);
    return out;
}

}  // namespace

PYBIND11_MODULE(tricluster, m) {
    m.doc() = "certified clustering of complex zeros of regular triangular polynomial systems";

    m.def("parse_system",
          [](const std::string& text) {
              ParsedSystem ps = parse_system(text);
              return ps.print();
          },
          py::arg("text"),
          "Parse a triangular system and return its canonical text form.");

    m.def("gen_random",
          [](const std::vector<unsigned>& type, std::uint64_t seed, unsigned coeff_bound_log2,
             bool multiple) {
              GeneratorSpec spec;
              spec.type = type;
              spec.seed = seed;
              spec.coeff_bound_log2 = coeff_bound_log2;
              spec.mode = multiple ? GeneratorMode::multiple : GeneratorMode::simple;
              return gen_random(spec).print();
          },
          py::arg("type"), py::arg("seed") = 1, py::arg("coeff_bound_log2") = 9,
          py::arg("multiple") = false,
          "Deterministic random dense triangular system, as system text.");

    m.def("solve",
          [](const std::string& text, const py::object& roi, long epsilon_log2, int threads,
             long max_precision_log2) {
              ParsedSystem ps = parse_system(text);
              TriangularSystem sys = ps.to_system();
              PolyBox box = roi_from_python(roi, sys.dimension());
              SolveOptions opt;
              opt.threads = threads;
              opt.max_precision_log2 = max_precision_log2;
              SolveResult res = cluster_tri(sys, box, -epsilon_log2, opt);
              return result_dict(res, box, epsilon_log2);
          },
          py::arg("system"), py::arg("roi") = "global", py::arg("epsilon_log2") = -53,
          py::arg("threads") = 1, py::arg("max_precision_log2") = 1L << 16,
          "Cluster all zeros of the system in the region; returns clusters with "
          "multiplicity vectors and totals.");

    m.def("verify",
          [](const std::string& text, const std::string& result_json) {
              ParsedSystem ps = parse_system(text);
              StoredResult stored = result_from_json(result_json);
              refsolve::VerifyReport rep = refsolve::verify_result(ps, stored.roi, stored.result);
              return py::make_tuple(rep.pass, rep.details);
          },
          py::arg("system"), py::arg("result_json"),
          "Check a solve result against the exact rational reference solver.");

    m.def("beta",
          [](unsigned d, const std::string& b) { return beta(d, Dyadic::parse(b)).to_double(); },
          py::arg("d"), py::arg("b"),
          "Power sum 1 + b + ... + b^d used by the specialization error bounds.");

    py::register_exception<SolveAbort>(m, "SolveAbort");
    py::register_exception<ParseError>(m, "ParseError");
}
