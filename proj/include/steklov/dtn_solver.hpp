#pragma once

#include "steklov/mesh.hpp"
#include "steklov/model_spectra.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace steklov {

/// Discrete Dirichlet-to-Neumann pencil on the Steklov nodes, in the original frame.
struct DtnOperator {
    Eigen::MatrixXd lambda;     // nodal map: Dirichlet values -> outward normal derivative
    Eigen::MatrixXd stiffness;  // W * lambda, symmetrized
    Eigen::VectorXd mass;       // quadrature weight times Steklov weight
    Eigen::VectorXd weights;    // quadrature weights on the Steklov nodes
    Eigen::MatrixXd density_map;  // Steklov data -> single-layer density on all nodes (internal frame)
    std::vector<std::size_t> steklov_nodes;
    double asymmetry = 0.0;  // |K - K^T|_F / |K|_F before symmetrization
    double condition = 0.0;  // estimate of the boundary-integral system's condition number
};

DtnOperator assemble_dtn(const MixedProblem& problem, const Mesh& mesh, int jobs = 1);

struct SolveDiagnostics {
    double asymmetry = 0.0;
    double condition = 0.0;
    double max_residual = 0.0;
    bool symmetric_solve = true;  // false: the unsymmetrized pencil was used (junctions present)
    std::size_t nodes = 0;
    std::size_t steklov_nodes = 0;
    double scale = 1.0;
};

struct EigenResult {
    Spectrum spectrum;
    Eigen::MatrixXd traces;     // eigenfunction values at Steklov nodes, mass-orthonormal
    Eigen::MatrixXd densities;  // single-layer densities at all nodes
    std::vector<double> error_estimate;  // per eigenvalue; empty when not requested
    SolveDiagnostics diagnostics;
    Mesh mesh;
};

EigenResult solve_mixed_steklov(const MixedProblem& problem, const SolverParams& params);

/// Largest per-eigenvalue error estimate relative to the eigenvalue scale of the result.
double max_error_estimate(const EigenResult& r);

struct ConvergenceRow {
    double nodes_per_unit_length = 0.0;
    std::size_t nodes = 0;
    std::vector<double> values;
    std::vector<double> errors;  // against the reference (closed form or finest level)
    std::vector<double> order;   // empirical order from the previous row; NaN on the first row
};

std::vector<ConvergenceRow> convergence_study(const MixedProblem& problem, const std::vector<double>& schedule,
                                              std::size_t K, const SolverParams& base,
                                              const std::vector<double>& exact = {});

}  // namespace steklov
