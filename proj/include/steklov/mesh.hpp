#pragma once

#include "steklov/geometry.hpp"
#include "steklov/model_spectra.hpp"

#include <cstddef>
#include <vector>

namespace steklov {

/// A domain with its effective boundary conditions and the problem kind they define.
struct MixedProblem {
    PlanarDomain domain;
    ProblemKind kind = ProblemKind::Steklov;
};

/// Steklov: every arc becomes Steklov. SN / SD: non-Steklov arcs become Neumann / Dirichlet.
/// DNMixed: conditions are kept as declared (the tag then follows the conditions present).
MixedProblem make_problem(const PlanarDomain& domain, ProblemKind kind);

struct SolverParams {
    double nodes_per_unit_length = 40.0;  // measured after rescaling the domain to diameter 1.7
    double grading = 3.0;                 // algebraic grading exponent toward junctions
    double corner_cutoff = 0.0;           // fraction of the junction-adjacent panel left without nodes
    double eig_tol = 1e-8;
    std::size_t K = 10;
    int panel_order = 16;
    bool multiply_connected = false;
    bool estimate_error = true;
    int jobs = 1;

    void validate() const;
};

/// Arc parameter as a function of the grading variable s in [0, 1].
/// Graded ends behave like s^q; q = 1 or no graded end gives the identity.
struct GradingMap {
    bool start = false;
    bool end = false;
    double q = 1.0;

    double operator()(double s) const { return eval(s, nullptr); }
    double eval(double s, double* dt_ds) const;
};

struct Panel {
    std::size_t arc = 0;  // index into Mesh::arcs
    double s0 = 0.0;      // interval in the grading variable
    double s1 = 1.0;
    double t0 = 0.0;      // arc parameters of the ends
    double t1 = 1.0;
    GradingMap map;
    std::size_t first_node = 0;
    std::size_t order = 0;
    bool periodic = false;  // uniform trapezoid rule on a full circle

    /// Arc parameter at local coordinate u in [0, 1]; optionally dt/du.
    double param(double u, double* dt_du = nullptr) const;
};

struct MeshNode {
    Vec2 x;
    Vec2 normal;
    double weight = 0.0;
    double t = 0.0;  // arc parameter
    std::size_t arc = 0;
    std::size_t panel = 0;
    Condition condition = Condition::Steklov;
    double rho = 1.0;
};

struct Mesh {
    std::vector<Arc> arcs;            // loop arcs in order, flattened
    std::vector<std::size_t> arc_loop;
    std::vector<Panel> panels;
    std::vector<MeshNode> nodes;
    std::vector<Vec2> junctions;
    double scale = 1.0;  // internal frame = original frame times scale

    std::size_t steklov_count() const;
    /// Sum of node weights on the Steklov arcs of each arc index.
    double steklov_weight_sum() const;
    /// Dilated copy about the origin; `scale` is updated so the internal frame is unchanged.
    Mesh scaled(double factor) const;
};

/// Nodes in the original frame; panel layout fixed by the rescaled domain.
Mesh discretize(const MixedProblem& problem, const SolverParams& params);

}  // namespace steklov
