#pragma once

#include <string>

#include "tricluster/clustertri.hpp"

namespace tricluster {

/// JSON result document. Dyadic numbers are {"m": "<decimal int>", "e": E}
/// meaning m * 2^E, bit-exact. Clusters carry center/radius per dimension,
/// the multiplicity vector and the total.
std::string result_to_json(const SolveResult& res, const PolyBox& roi, long epsilon_log2);

/// Human-readable rendering of the same data.
std::string result_to_text(const SolveResult& res, const PolyBox& roi, long epsilon_log2);

/// Parses a JSON result document back (for the verify command).
struct StoredResult {
    SolveResult result;
    PolyBox roi;
    long epsilon_log2 = 0;
};
StoredResult result_from_json(const std::string& text);

}  // namespace tricluster
