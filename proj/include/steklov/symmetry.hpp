#pragma once

#include "steklov/dtn_solver.hpp"
#include "steklov/geometry.hpp"
#include "steklov/mesh.hpp"

#include <json.hpp>

#include <cstddef>
#include <vector>

namespace steklov {

/// Half of a reflection-symmetric domain on the left of the axis direction. The axis chords
/// get `chord` (Neumann or Dirichlet); every other arc keeps its condition.
MixedProblem quotient(const PlanarDomain& domain, const ReflectionAxis& axis, Condition chord);

/// Geometric half only (no problem retagging).
PlanarDomain quotient_domain(const PlanarDomain& domain, const ReflectionAxis& axis, Condition chord);

struct SplitReport {
    Spectrum full;
    Spectrum sn;
    Spectrum sd;
    Spectrum merged;
    std::vector<double> relative_mismatch;  // per index, |merged - full| / max(|full|, 1e-3 * full_top)
    double max_mismatch = 0.0;
    double max_absolute = 0.0;
    double error_budget = 0.0;  // sum of the three solves' largest error estimates
};

/// Steklov spectrum of the whole domain against the merge of the two quotient problems.
SplitReport reflection_split_check(const PlanarDomain& domain, const ReflectionAxis& axis, std::size_t K,
                                   const SolverParams& params);

struct DihedralReport {
    double sigma1_full = 0.0;     // σ_1(Ω)
    double sigma1_neumann = 0.0;  // σ_1^N(Ω_τ)
    double sigma0_dirichlet = 0.0;  // σ_0^D(Ω_τ)
    double max_relative_spread = 0.0;
};

/// Requires two orthogonal reflection axes through a 4-fold rotation center.
DihedralReport dihedral_check(const PlanarDomain& domain, const SolverParams& params);

nlohmann::json to_json(const SplitReport& r);
nlohmann::json to_json(const DihedralReport& r);

}  // namespace steklov
