#pragma once

#include <string>

#include "json.hpp"

namespace epc {

inline constexpr const char* kVersion = "0.1.0";

// One CLI subcommand's outcome: the structured report and the process exit
// code (0 = checks passed, 1 = a mathematical check failed; input and usage
// problems are thrown and mapped to exit 2 by the caller).
struct ApiResult {
  int exit_code = 0;
  nlohmann::ordered_json report;
};

ApiResult api_check_mc(const std::string& input, bool verbose);
ApiResult api_d2(const std::string& input, int trials, unsigned long seed, int max_degree);
ApiResult api_gc(const std::string& input, int grid);
ApiResult api_ellipticity(const std::string& input, int grid);
ApiResult api_homology(const std::string& input, const std::string& complex_kind, int cutoff);
ApiResult api_pairing(const std::string& input, int degree, int cutoff);
ApiResult api_verify_main1(const std::string& input, int trials, unsigned long seed, int max_degree);
ApiResult api_modular(const std::string& input, const std::string& form);
ApiResult api_coisotropic(const std::string& input, const std::string& subspace);
ApiResult api_poisson_map(const std::string& source, const std::string& target,
                          const std::string& matrix);

}  // namespace epc
