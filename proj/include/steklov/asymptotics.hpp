#pragma once

#include "steklov/dtn_solver.hpp"
#include "steklov/geometry.hpp"
#include "steklov/mesh.hpp"
#include "steklov/model_spectra.hpp"

#include <json.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace steklov {

struct ResidualRow {
    std::size_t k = 0;
    double computed = 0.0;
    double model = 0.0;
    double residual = 0.0;
};

/// Decay verdicts over a residual table.
struct DecayVerdict {
    double lower_window_max = 0.0;  // max residual over the first half of the range
    double upper_window_max = 0.0;  // max residual over the second half
    bool two_window = false;        // upper < lower
    double log_slope = 0.0;         // least-squares slope of log(residual) against log(k)
};

DecayVerdict decay_verdict(const std::vector<ResidualRow>& rows);

struct AsymptoticsReport {
    ProblemKind kind = ProblemKind::Steklov;
    BoundaryData data;
    std::vector<ResidualRow> rows;
    DecayVerdict verdict;
};

/// Checks the junction hypothesis: Steklov arcs meet non-Steklov arcs orthogonally, those
/// arcs are straight at the junction, and the Steklov part has no corners.
void check_junction_hypothesis(const PlanarDomain& domain);

/// Computed spectrum against the model spectrum of the boundary data, for k in [kmin, kmax].
AsymptoticsReport asymptotics_report(const MixedProblem& problem, std::size_t kmin, std::size_t kmax,
                                     const SolverParams& params);

struct ShiftReport {
    std::size_t m = 0;
    std::vector<ResidualRow> rows;  // computed = σ_{k+m}^N, model = σ_k^D
    DecayVerdict verdict;
};

/// |σ_{k+m}^N - σ_k^D| on one geometry; m defaults to the number of Steklov intervals.
ShiftReport sn_sd_shift(const PlanarDomain& domain, std::size_t kmin, std::size_t kmax, const SolverParams& params,
                        long m = -1);

struct Cluster {
    double value = 0.0;
    std::size_t first = 0;
    std::size_t multiplicity = 0;
};

struct MultiplicityReport {
    std::vector<Cluster> clusters;
    std::size_t bound = 0;  // 2n + m
    std::size_t burn_in = 0;
    double tolerance = 0.0;
    std::size_t largest_after_burn_in = 0;
    bool passed = false;
};

/// Clusters values closer than rel_tol times the mean gap; checks clusters starting at or after
/// `burn_in` against 2n + m.
MultiplicityReport multiplicity_report(const Spectrum& spectrum, const BoundaryData& data, std::size_t burn_in,
                                       double rel_tol = 1e-6);

nlohmann::json to_json(const AsymptoticsReport& r);
nlohmann::json to_json(const ShiftReport& r);
nlohmann::json to_json(const MultiplicityReport& r);
std::string residual_csv(const std::vector<ResidualRow>& rows);

}  // namespace steklov
