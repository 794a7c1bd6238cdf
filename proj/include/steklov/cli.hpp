#pragma once

#include "steklov/mesh.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace steklov::cli {

enum ExitCode {
    kOk = 0,
    kDomainError = 1,
    kNumericalFailure = 2,
    kViolation = 3,
    kUsage = 64,
};

/// Plain `key = value` lines; '#' starts a comment.
std::map<std::string, std::string> parse_config(std::istream& in);

/// Applies recognised keys (nodes_per_unit_length, grading, corner_cutoff, eig_tol, K,
/// panel_order, jobs, multiply_connected) to the solver parameters.
void apply_config(const std::map<std::string, std::string>& config, SolverParams& params);

/// Rounds every floating-point number in the document to `digits` significant digits.
nlohmann::json round_numbers(const nlohmann::json& j, int digits = 15);

std::string version();

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace steklov::cli
