#include "steklov/dtn_solver.hpp"

#include "quadrature.hpp"
#include "steklov/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <thread>

namespace steklov {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInv2Pi = 0.5 / std::numbers::pi;
constexpr double kNearFactor = 2.0;

struct PanelGeo {
    Vec2 mid;
    double length = 0.0;
    const quad::GaussRule* rule = nullptr;
};

template <typename F>
void parallel_for(std::size_t n, int jobs, F&& body) {
    if (jobs <= 1 || n < 64) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + jobs - 1) / jobs;
    for (int t = 0; t < jobs; ++t) {
        const std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

/// Constant value of (x - y).n_x / |x - y|^2 for x, y on one circle (zero on a segment).
double same_arc_double_kernel(const Arc& arc) {
    if (arc.is_segment()) return 0.0;
    const auto& g = arc.circle_geom();
    return (g.sweep > 0.0 ? 1.0 : -1.0) / (2.0 * g.radius);
}

/// Local coordinate of arc parameter t on a panel (the grading map is increasing).
double local_coordinate(const Panel& panel, double t) {
    if (t <= panel.t0) return 0.0;
    if (t >= panel.t1) return 1.0;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        (panel.param(mid) < t ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Product-integration weights of the log and normal-derivative kernels for a target near
/// (or on) a panel. The interpolated quantity is density times arc-length Jacobian, which
/// stays smooth under the grading map.
void near_weights(const Mesh& mesh, const Panel& panel, const PanelGeo& geo, const MeshNode& target, std::size_t ti,
                  const quad::TanhSinh& ts, double* s_out, double* d_out) {
    const std::size_t n = panel.order;
    std::fill(s_out, s_out + n, 0.0);
    std::fill(d_out, d_out + n, 0.0);
    const Arc& arc = mesh.arcs[panel.arc];
    const bool same = target.arc == panel.arc;
    double ustar;
    if (ti >= panel.first_node && ti < panel.first_node + n)
        ustar = geo.rule->x[ti - panel.first_node];
    else if (same)
        ustar = local_coordinate(panel, target.t);
    else
        ustar = local_coordinate(panel, arc.closest_param(target.x));
    std::vector<double> basis(n);
    const double L = arc.length();

    auto accumulate = [&](double u, double offset, double w) {
        quad::lagrange(*geo.rule, u, basis.data());
        double dt = 0.0;
        const Vec2 r = target.x - arc.point(panel.param(u, &dt));
        double r2 = dot(r, r);
        const double floor = L * dt * offset;
        if (same && r2 < 1e-26) r2 = floor * floor;
        if (!(r2 > 0.0)) return;
        const double logd = 0.5 * std::log(r2);
        const double kd = same ? 0.0 : dot(r, target.normal) / r2;
        for (std::size_t j = 0; j < n; ++j) {
            s_out[j] += w * logd * basis[j];
            d_out[j] += w * kd * basis[j];
        }
    };
    if (ustar > 1e-15) {
        for (std::size_t k = 0; k < ts.w.size(); ++k) {
            const double off = ustar * ts.from_right[k];
            accumulate(ustar - off, off, ustar * ts.w[k]);
        }
    }
    if (ustar < 1.0 - 1e-15) {
        const double len = 1.0 - ustar;
        for (std::size_t k = 0; k < ts.w.size(); ++k) {
            const double off = len * ts.from_left[k];
            accumulate(ustar + off, off, len * ts.w[k]);
        }
    }
    const double kc = same ? same_arc_double_kernel(arc) : 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const MeshNode& y = mesh.nodes[panel.first_node + j];
        const double jac = y.weight / geo.rule->w[j];
        s_out[j] *= jac;
        d_out[j] = same ? kc * y.weight : d_out[j] * jac;
    }
}

/// Single-layer (S) and normal-derivative (D) matrices in the internal frame.
void build_operators(const Mesh& mesh, int jobs, Eigen::MatrixXd& S, Eigen::MatrixXd& D) {
    const std::size_t N = mesh.nodes.size();
    S.setZero(N, N);
    D.setZero(N, N);

    std::vector<quad::GaussRule> rules(41);
    std::vector<std::optional<PanelGeo>> geos(mesh.panels.size());
    for (std::size_t p = 0; p < mesh.panels.size(); ++p) {
        const Panel& P = mesh.panels[p];
        if (P.periodic) continue;
        if (rules[P.order].x.empty()) rules[P.order] = quad::gauss_legendre(static_cast<int>(P.order));
        const Arc& arc = mesh.arcs[P.arc];
        geos[p].emplace(PanelGeo{arc.point(P.param(0.5)), arc.length() * (P.t1 - P.t0), &rules[P.order]});
    }
    const quad::TanhSinh ts = quad::tanh_sinh();

    parallel_for(N, jobs, [&](std::size_t i) {
        const MeshNode& x = mesh.nodes[i];
        std::vector<double> sw(41), dw(41);
        for (std::size_t p = 0; p < mesh.panels.size(); ++p) {
            const Panel& P = mesh.panels[p];
            if (P.periodic) {
                const Arc& arc = mesh.arcs[P.arc];
                const double R = arc.circle_geom().radius;
                const double sgn = arc.circle_geom().sweep > 0.0 ? 1.0 : -1.0;
                const std::size_t M = P.order, half = M / 2;
                const std::size_t ix = i - P.first_node;
                for (std::size_t j = 0; j < M; ++j) {
                    const double tau = 2.0 * kPi * static_cast<double>((ix + M - j) % M) / static_cast<double>(M);
                    double kress = 0.0;
                    for (std::size_t m = 1; m < half; ++m) kress -= std::cos(m * tau) / static_cast<double>(m);
                    kress = kress * 2.0 * kPi / M - kPi / (static_cast<double>(half) * M) * std::cos(half * tau);
                    S(i, P.first_node + j) = -kInv2Pi * R * (std::log(R) * 2.0 * kPi / M + kress);
                    D(i, P.first_node + j) = -sgn / (2.0 * static_cast<double>(M));
                }
                continue;
            }
            const PanelGeo& g = *geos[p];
            const double dmid = norm(x.x - g.mid);
            bool near = false;
            if (dmid < (0.5 + kNearFactor) * g.length) {
                const Arc& arc = mesh.arcs[P.arc];
                const double tc = std::clamp(arc.closest_param(x.x), P.t0, P.t1);
                near = x.arc == P.arc || norm(x.x - arc.point(tc)) < kNearFactor * g.length;
            }
            if (!near) {
                for (std::size_t k = 0; k < P.order; ++k) {
                    const MeshNode& y = mesh.nodes[P.first_node + k];
                    const Vec2 r = x.x - y.x;
                    const double r2 = dot(r, r);
                    S(i, P.first_node + k) = -kInv2Pi * 0.5 * std::log(r2) * y.weight;
                    D(i, P.first_node + k) = -kInv2Pi * dot(r, x.normal) / r2 * y.weight;
                }
                continue;
            }
            near_weights(mesh, P, g, x, i, ts, sw.data(), dw.data());
            for (std::size_t k = 0; k < P.order; ++k) {
                S(i, P.first_node + k) = -kInv2Pi * sw[k];
                D(i, P.first_node + k) = -kInv2Pi * dw[k];
            }
        }
    });
}

}  // namespace

DtnOperator assemble_dtn(const MixedProblem& problem, const Mesh& original, int jobs) {
    if (!problem.domain.simply_connected() && original.arc_loop.empty())
        fail(ErrorKind::UnsupportedTopology, "mesh does not match the problem");
    const Mesh mesh = original.scaled(original.scale);
    const std::size_t N = mesh.nodes.size();

    Eigen::MatrixXd S, D;
    build_operators(mesh, jobs, S, D);

    DtnOperator op;
    for (std::size_t i = 0; i < N; ++i)
        if (mesh.nodes[i].condition == Condition::Steklov) op.steklov_nodes.push_back(i);
    const std::size_t NS = op.steklov_nodes.size();
    if (NS == 0) fail(ErrorKind::EmptySteklovBoundary, "mesh has no Steklov nodes");

    Eigen::MatrixXd A(N, N);
    for (std::size_t i = 0; i < N; ++i) {
        if (mesh.nodes[i].condition == Condition::Neumann) {
            A.row(i) = D.row(i);
            A(i, i) += 0.5;
        } else {
            A.row(i) = S.row(i);
        }
    }
    // row then column equilibration; the estimate is taken on the scaled system
    Eigen::VectorXd rs = A.cwiseAbs().rowwise().maxCoeff().cwiseInverse();
    A = rs.asDiagonal() * A;
    Eigen::VectorXd cs = A.cwiseAbs().colwise().maxCoeff().transpose().cwiseInverse();
    A = A * cs.asDiagonal();
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const double rcond = lu.rcond();
    op.condition = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
    if (!(op.condition <= 1e13))
        fail(ErrorKind::IllConditioned, "boundary-integral system condition estimate " + std::to_string(op.condition));

    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(N, NS);
    Eigen::MatrixXd C(NS, N);
    for (std::size_t s = 0; s < NS; ++s) {
        const std::size_t i = op.steklov_nodes[s];
        B(i, s) = 1.0;
        C.row(s) = D.row(i);
        C(s, i) += 0.5;
    }
    op.density_map = cs.asDiagonal() * lu.solve(rs.asDiagonal() * B);
    Eigen::MatrixXd lambda = C * op.density_map;  // internal frame

    op.lambda = original.scale * lambda;
    op.mass.resize(NS);
    op.weights.resize(NS);
    for (std::size_t k = 0; k < NS; ++k) {
        const MeshNode& node = original.nodes[op.steklov_nodes[k]];
        op.weights(k) = node.weight;
        op.mass(k) = node.weight * node.rho;
    }
    const Eigen::MatrixXd K = op.weights.asDiagonal() * op.lambda;
    const double kn = K.norm();
    op.asymmetry = kn > 0.0 ? (K - K.transpose()).norm() / kn : 0.0;
    op.stiffness = 0.5 * (K + K.transpose());
    return op;
}

namespace {

extern "C" void dgeev_(const char* jobvl, const char* jobvr, const int* n, double* a, const int* lda, double* wr,
                       double* wi, double* vl, const int* ldvl, double* vr, const int* ldvr, double* work,
                       const int* lwork, int* info);

constexpr double kSymmetricPathTol = 1e-6;

struct Pairs {
    std::vector<double> values;
    Eigen::MatrixXd vectors;  // Steklov-node traces, mass-orthonormal
    double residual = 0.0;
};

void normalize_sign(Eigen::Ref<Eigen::VectorXd> y) {
    Eigen::Index i;
    y.cwiseAbs().maxCoeff(&i);
    if (y(i) < 0.0) y = -y;
}

Pairs symmetric_pairs(const DtnOperator& op, std::size_t K, bool vectors) {
    const Eigen::VectorXd isq = op.mass.cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd A = isq.asDiagonal() * op.stiffness * isq.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success) fail(ErrorKind::EigensolveFailed, "dense symmetric eigensolver did not converge");
    Pairs out;
    const double anorm = std::max(A.norm(), std::numeric_limits<double>::min());
    if (vectors) out.vectors.resize(A.rows(), K);
    for (std::size_t k = 0; k < K; ++k) {
        const double lam = es.eigenvalues()(k);
        const Eigen::VectorXd y = es.eigenvectors().col(k);
        out.residual = std::max(out.residual, (A * y - lam * y).norm() / anorm);
        out.values.push_back(lam);
        if (vectors) {
            out.vectors.col(k) = isq.asDiagonal() * y;
            normalize_sign(out.vectors.col(k));
        }
    }
    return out;
}

/// Right eigenpairs of rho^{-1} Lambda. Without Dirichlet nodes constants are harmonic with
/// zero flux, and the row sums of Lambda are set to zero accordingly.
Pairs general_pairs(const DtnOperator& op, std::size_t K, bool vectors, bool constants_harmonic) {
    const int n = static_cast<int>(op.lambda.rows());
    Eigen::MatrixXd L = op.lambda;
    if (constants_harmonic) L.diagonal() -= L.rowwise().sum();
    const Eigen::VectorXd rho = op.mass.cwiseQuotient(op.weights);
    const Eigen::MatrixXd A = rho.cwiseInverse().asDiagonal() * L;

    Eigen::MatrixXd work_a = A;
    std::vector<double> wr(n), wi(n);
    Eigen::MatrixXd vr(vectors ? n : 1, vectors ? n : 1);
    const char jobvl = 'N', jobvr = vectors ? 'V' : 'N';
    const int ldv = vectors ? n : 1, one = 1;
    int info = 0, lwork = -1;
    double query = 0.0;
    dgeev_(&jobvl, &jobvr, &n, work_a.data(), &n, wr.data(), wi.data(), nullptr, &one, vr.data(), &ldv, &query,
           &lwork, &info);
    lwork = static_cast<int>(query);
    std::vector<double> work(std::max(1, lwork));
    dgeev_(&jobvl, &jobvr, &n, work_a.data(), &n, wr.data(), wi.data(), nullptr, &one, vr.data(), &ldv, work.data(),
           &lwork, &info);
    if (info != 0) fail(ErrorKind::EigensolveFailed, "nonsymmetric eigensolver returned " + std::to_string(info));

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return wr[a] < wr[b]; });
    const double top = std::abs(wr[order[K - 1]]);
    Pairs out;
    const double anorm = std::max(A.norm(), std::numeric_limits<double>::min());
    if (vectors) out.vectors.resize(n, K);
    for (std::size_t k = 0; k < K; ++k) {
        const int j = order[k];
        if (std::abs(wi[j]) > 1e-6 * std::max(top, 1.0))
            fail(ErrorKind::EigensolveFailed, "complex eigenvalue among the lowest " + std::to_string(K));
        out.values.push_back(wr[j]);
        if (vectors) {
            Eigen::VectorXd y = vr.col(j);
            out.residual = std::max(out.residual, (A * y - wr[j] * y).norm() / (anorm * y.norm()));
            y /= std::sqrt(y.dot(op.mass.asDiagonal() * y));
            normalize_sign(y);
            out.vectors.col(k) = y;
        }
    }
    return out;
}

EigenResult solve_impl(const MixedProblem& problem, const SolverParams& params, bool vectors) {
    params.validate();
    EigenResult res;
    res.mesh = discretize(problem, params);
    const DtnOperator op = assemble_dtn(problem, res.mesh, params.jobs);
    const std::size_t NS = op.steklov_nodes.size();
    const std::size_t K = std::min(params.K, NS);

    bool has_dirichlet = false;
    for (const auto& node : res.mesh.nodes) has_dirichlet = has_dirichlet || node.condition == Condition::Dirichlet;
    const bool symmetric = op.asymmetry <= kSymmetricPathTol;
    const Pairs pairs = symmetric ? symmetric_pairs(op, K, vectors) : general_pairs(op, K, vectors, !has_dirichlet);
    if (pairs.residual > params.eig_tol)
        fail(ErrorKind::EigensolveFailed,
             "eigenpair residual " + std::to_string(pairs.residual) + " exceeds the tolerance");

    res.spectrum.kind = problem.kind;
    res.spectrum.source = "dtn solver";
    res.spectrum.values = pairs.values;
    if (vectors) {
        res.traces = pairs.vectors;
        // densities live in the internal frame
        res.densities = op.density_map * res.traces;
    }
    res.diagnostics.asymmetry = op.asymmetry;
    res.diagnostics.condition = op.condition;
    res.diagnostics.max_residual = pairs.residual;
    res.diagnostics.symmetric_solve = symmetric;
    res.diagnostics.nodes = res.mesh.nodes.size();
    res.diagnostics.steklov_nodes = NS;
    res.diagnostics.scale = res.mesh.scale;
    return res;
}

}  // namespace

EigenResult solve_mixed_steklov(const MixedProblem& problem, const SolverParams& params) {
    EigenResult res = solve_impl(problem, params, true);
    if (params.estimate_error) {
        SolverParams coarse = params;
        coarse.estimate_error = false;
        coarse.nodes_per_unit_length = params.nodes_per_unit_length * 2.0 / 3.0;
        EigenResult other;
        try {
            other = solve_impl(problem, coarse, false);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::TooFewNodes) throw;
            coarse.nodes_per_unit_length = params.nodes_per_unit_length * 1.5;
            other = solve_impl(problem, coarse, false);
        }
        const std::size_t K = res.spectrum.values.size();
        const double top = res.spectrum.values.back();
        for (std::size_t k = 0; k < K; ++k) {
            const double diff = std::abs(res.spectrum.values[k] - other.spectrum.values[k]);
            res.error_estimate.push_back(std::max(diff, 1e-10 * std::max(std::abs(res.spectrum.values[k]), 1e-3 * top)));
        }
    }
    return res;
}

double max_error_estimate(const EigenResult& r) {
    double m = 0.0;
    for (double e : r.error_estimate) m = std::max(m, e);
    return m;
}

std::vector<ConvergenceRow> convergence_study(const MixedProblem& problem, const std::vector<double>& schedule,
                                              std::size_t K, const SolverParams& base, const std::vector<double>& exact) {
    if (schedule.size() < 3) fail(ErrorKind::InvalidArgument, "convergence schedule needs at least three levels");
    for (std::size_t i = 1; i < schedule.size(); ++i)
        if (!(schedule[i] > schedule[i - 1]))
            fail(ErrorKind::InvalidArgument, "convergence schedule must be strictly increasing");
    if (!exact.empty() && exact.size() < K) fail(ErrorKind::InvalidArgument, "too few reference values");

    std::vector<ConvergenceRow> rows;
    for (double d : schedule) {
        SolverParams p = base;
        p.nodes_per_unit_length = d;
        p.K = K;
        p.estimate_error = false;
        const EigenResult r = solve_impl(problem, p, false);
        rows.push_back({d, r.diagnostics.nodes, r.spectrum.values, {}, {}});
    }
    const std::vector<double>& ref = exact.empty() ? rows.back().values : exact;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t k = 0; k < K; ++k) rows[i].errors.push_back(std::abs(rows[i].values[k] - ref[k]));
        for (std::size_t k = 0; k < K; ++k) {
            double order = std::numeric_limits<double>::quiet_NaN();
            if (i > 0) {
                const double e0 = rows[i - 1].errors[k], e1 = rows[i].errors[k];
                if (e0 > 0.0 && e1 > 0.0)
                    order = std::log(e0 / e1) / std::log(static_cast<double>(rows[i].nodes) / rows[i - 1].nodes);
            }
            rows[i].order.push_back(order);
        }
    }
    return rows;
}

}  // namespace steklov
