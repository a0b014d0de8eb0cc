#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tricluster/clustertri.hpp"
#include "tricluster/generator.hpp"
#include "tricluster/parser.hpp"
#include "tricluster/refsolve.hpp"
#include "tricluster/report.hpp"

namespace {

using namespace tricluster;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitPrecisionAbort = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Dyadic parse_coord(const std::string& s) {
    return Dyadic::parse(s);
}

// ROI spec: one "cx,cy,w" triple per dimension, separated by ';'.
PolyBox parse_roi(const std::string& spec) {
    PolyBox roi;
    std::istringstream in(spec);
    std::string comp;
    while (std::getline(in, comp, ';')) {
        std::istringstream cin(comp);
        std::string cx, cy, w;
        if (!std::getline(cin, cx, ',') || !std::getline(cin, cy, ',') || !std::getline(cin, w))
            throw std::runtime_error("ROI component must be 'cx,cy,w': " + comp);
        Box b(parse_coord(cx), parse_coord(cy), parse_coord(w));
        if (b.w.sign() <= 0) throw std::runtime_error("ROI width must be positive");
        roi.push_back(b);
    }
    if (roi.empty()) throw std::runtime_error("empty ROI spec");
    return roi;
}

PolyBox uniform_roi(int n, long width) {
    PolyBox roi;
    for (int i = 0; i < n; ++i) roi.push_back(Box(Dyadic(0), Dyadic(0), Dyadic(width)));
    return roi;
}

struct RoiFlags {
    std::string spec;
    bool global_box = false;
    bool local_box = false;

    PolyBox resolve(int dimension) const {
        if (!spec.empty()) return parse_roi(spec);
        if (global_box) return uniform_roi(dimension, 1000000);
        if (local_box) return uniform_roi(dimension, 2);
        throw std::runtime_error("one of --roi, --global, --local is required");
    }
};

std::vector<unsigned> parse_type(const std::string& s) {
    std::vector<unsigned> type;
    std::istringstream in(s);
    std::string part;
    while (std::getline(in, part, ',')) type.push_back(static_cast<unsigned>(std::stoul(part)));
    return type;
}

int run_solve(const std::string& system_file, const RoiFlags& roi_flags, long epsilon_log2,
              const std::string& output, int threads, long max_precision_log2) {
    ParsedSystem ps;
    try {
        ps = parse_system(read_file(system_file));
    } catch (const ParseError& e) {
        std::cerr << "parse error at line " << e.line << ", column " << e.column << ": "
                  << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    try {
        TriangularSystem sys = ps.to_system();
        PolyBox roi = roi_flags.resolve(sys.dimension());
        if (static_cast<int>(roi.size()) != sys.dimension()) {
            std::cerr << "error: ROI dimension " << roi.size() << " does not match system dimension "
                      << sys.dimension() << "\n";
            return kExitInputError;
        }
        SolveOptions opt;
        opt.threads = threads;
        opt.max_precision_log2 = max_precision_log2;
        long L = -epsilon_log2;
        SolveResult res = cluster_tri(sys, roi, L, opt);
        if (output == "json")
            std::cout << result_to_json(res, roi, epsilon_log2) << "\n";
        else
            std::cout << result_to_text(res, roi, epsilon_log2);
        return kExitOk;
    } catch (const SolveAbort& e) {
        std::cerr << "aborted: " << e.what() << " (level " << e.stuck.level << ")\n";
        return kExitPrecisionAbort;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

int run_gen(const std::string& type_str, std::uint64_t seed, bool multiple,
            unsigned coeff_bound_log2, const std::string& out_file) {
    try {
        GeneratorSpec spec;
        spec.type = parse_type(type_str);
        spec.seed = seed;
        spec.coeff_bound_log2 = coeff_bound_log2;
        spec.mode = multiple ? GeneratorMode::multiple : GeneratorMode::simple;
        ParsedSystem sys = gen_random(spec);
        if (out_file.empty()) {
            std::cout << sys.print();
        } else {
            std::ofstream out(out_file);
            out << sys.print();
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

int run_bench(const std::string& type_str, int seeds, bool multiple, unsigned coeff_bound_log2,
              const RoiFlags& roi_flags, long epsilon_log2, int threads) {
    try {
        std::vector<unsigned> type = parse_type(type_str);
        std::cout << "seed\tclusters\ttotal\tt_star\twall_s\n";
        for (int seed = 1; seed <= seeds; ++seed) {
            GeneratorSpec spec;
            spec.type = type;
            spec.seed = static_cast<std::uint64_t>(seed);
            spec.coeff_bound_log2 = coeff_bound_log2;
            spec.mode = multiple ? GeneratorMode::multiple : GeneratorMode::simple;
            ParsedSystem ps = gen_random(spec);
            TriangularSystem sys = ps.to_system();
            RoiFlags flags = roi_flags;
            if (flags.spec.empty() && !flags.local_box) flags.global_box = true;
            PolyBox roi = flags.resolve(sys.dimension());
            SolveOptions opt;
            opt.threads = threads;
            SolveResult res = cluster_tri(sys, roi, -epsilon_log2, opt);
            long long total = 0;
            for (const SolvedCluster& c : res.clusters) total += c.total;
            std::cout << seed << "\t" << res.clusters.size() << "\t" << total << "\t"
                      << res.stats.t_star_calls << "\t" << res.stats.wall_seconds << "\n";
        }
        return kExitOk;
    } catch (const SolveAbort& e) {
        std::cerr << "aborted: " << e.what() << "\n";
        return kExitPrecisionAbort;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

int run_verify(const std::string& system_file, const std::string& result_file) {
    try {
        ParsedSystem ps = parse_system(read_file(system_file));
        StoredResult stored = result_from_json(read_file(result_file));
        refsolve::VerifyReport rep = refsolve::verify_result(ps, stored.roi, stored.result);
        std::cout << (rep.pass ? "PASS" : "FAIL") << ": " << rep.details << "\n";
        return rep.pass ? kExitOk : kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified clustering of complex zeros of regular triangular systems"};
    app.require_subcommand(1);

    std::string system_file, result_file, out_file, output = "text", type_str;
    RoiFlags roi_flags;
    long epsilon_log2 = -53;
    long max_precision_log2 = 1L << 16;
    int threads = 1, seeds = 5;
    std::uint64_t seed = 1;
    bool multiple = false;
    unsigned coeff_bound_log2 = 9;

    CLI::App* solve = app.add_subcommand("solve", "solve a triangular system in a region");
    solve->add_option("--system", system_file, "system file")->required();
    solve->add_option("--roi", roi_flags.spec, "region 'cx,cy,w;...' (one triple per dimension)");
    solve->add_flag("--global", roi_flags.global_box, "region centered at 0 with width 10^6");
    solve->add_flag("--local", roi_flags.local_box, "region centered at 0 with width 2");
    solve->add_option("--epsilon-log2", epsilon_log2, "cluster radius bound 2^k (default -53)");
    solve->add_option("--output", output, "json|text")->check(CLI::IsMember({"json", "text"}));
    solve->add_option("--threads", threads, "parallel lifts (default 1)");
    solve->add_option("--max-precision-log2", max_precision_log2, "abort beyond this precision");

    CLI::App* gen = app.add_subcommand("gen", "generate a random dense triangular system");
    gen->add_option("--type", type_str, "degrees d1,d2,...")->required();
    gen->add_option("--seed", seed, "64-bit seed (default 1)");
    gen->add_flag("--multiple", multiple, "multiple-solution mode");
    gen->add_option("--coeff-bound-log2", coeff_bound_log2, "coefficients in [-2^b, 2^b]");
    gen->add_option("--out", out_file, "write to file instead of stdout");

    CLI::App* bench = app.add_subcommand("bench", "generate and solve a batch of systems");
    bench->add_option("--type", type_str, "degrees d1,d2,...")->required();
    bench->add_option("--seeds", seeds, "number of seeds, 1..N (default 5)");
    bench->add_flag("--multiple", multiple, "multiple-solution mode");
    bench->add_option("--coeff-bound-log2", coeff_bound_log2, "coefficients in [-2^b, 2^b]");
    bench->add_option("--roi", roi_flags.spec, "region, as in solve (default --global)");
    bench->add_flag("--global", roi_flags.global_box, "width 10^6 region");
    bench->add_flag("--local", roi_flags.local_box, "width 2 region");
    bench->add_option("--epsilon-log2", epsilon_log2, "cluster radius bound 2^k");
    bench->add_option("--threads", threads, "parallel lifts");

    CLI::App* verify = app.add_subcommand("verify", "check a solve result against a reference solver");
    verify->add_option("--system", system_file, "system file")->required();
    verify->add_option("--result", result_file, "JSON result from solve")->required();

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed())
        return run_solve(system_file, roi_flags, epsilon_log2, output, threads, max_precision_log2);
    if (gen->parsed()) return run_gen(type_str, seed, multiple, coeff_bound_log2, out_file);
    if (bench->parsed())
        return run_bench(type_str, seeds, multiple, coeff_bound_log2, roi_flags, epsilon_log2,
                         threads);
    if (verify->parsed()) return run_verify(system_file, result_file);
    return kExitInputError;
}
