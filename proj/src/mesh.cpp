#include "steklov/mesh.hpp"

#include "quadrature.hpp"
#include "steklov/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace steklov {

namespace {

constexpr double kTargetDiameter = 1.7;
constexpr std::size_t kMinGradedPanels = 4;

bool is_junction(const Arc& prev, const Arc& next) {
    if (prev.condition() != next.condition()) return true;
    const Vec2 a = prev.tangent(1.0), b = next.tangent(0.0);
    return std::abs(std::atan2(cross(a, b), dot(a, b))) > 1e-8;
}

/// Kress's two-sided substitution on [0, 1].
double kress(double s, double q, double* ds) {
    const double a = 1.0 / q - 0.5;
    const double c = 1.0 - 2.0 * s;
    const double v = a * c * c * c - c / q + 0.5;
    const double dv = -6.0 * a * c * c + 2.0 / q;
    const double A = std::pow(v, q), B = std::pow(1.0 - v, q);
    if (ds) {
        const double den = A + B;
        *ds = den > 0.0 ? q * dv * std::pow(v, q - 1.0) * std::pow(1.0 - v, q - 1.0) / (den * den) : 0.0;
    }
    return A / (A + B);
}

}  // namespace

double GradingMap::eval(double s, double* dt_ds) const {
    if (q == 1.0 || (!start && !end)) {
        if (dt_ds) *dt_ds = 1.0;
        return s;
    }
    if (start && end) return kress(s, q, dt_ds);
    if (start) return 2.0 * kress(0.5 * s, q, dt_ds);
    const double t = 1.0 - 2.0 * kress(0.5 * (1.0 - s), q, dt_ds);
    return t;
}

double Panel::param(double u, double* dt_du) const {
    double d = 1.0;
    const double t = map.eval(s0 + u * (s1 - s0), &d);
    if (dt_du) *dt_du = d * (s1 - s0);
    return t;
}

MixedProblem make_problem(const PlanarDomain& domain, ProblemKind kind) {
    std::vector<Loop> loops;
    bool has_n = false, has_d = false;
    for (const auto& l : domain.loops()) {
        Loop out{{}, l.orientation};
        for (const auto& a : l.arcs) {
            Condition c = a.condition();
            if (kind == ProblemKind::Steklov) c = Condition::Steklov;
            else if (kind == ProblemKind::SN && c != Condition::Steklov) c = Condition::Neumann;
            else if (kind == ProblemKind::SD && c != Condition::Steklov) c = Condition::Dirichlet;
            has_n = has_n || c == Condition::Neumann;
            has_d = has_d || c == Condition::Dirichlet;
            out.arcs.push_back(c == a.condition() ? a : a.with_condition(c));
        }
        loops.push_back(std::move(out));
    }
    MixedProblem p{PlanarDomain(std::move(loops), domain.symmetry()), kind};
    if (kind == ProblemKind::DNMixed || kind == ProblemKind::Steklov) {
        p.kind = has_n && has_d ? ProblemKind::DNMixed
                 : has_d        ? ProblemKind::SD
                 : has_n        ? ProblemKind::SN
                                : ProblemKind::Steklov;
    }
    if (!(p.domain.steklov_length() > 0.0)) fail(ErrorKind::EmptySteklovBoundary, "problem has no Steklov arcs");
    boundary_data(p.domain);  // rejects malformed decompositions
    return p;
}

void SolverParams::validate() const {
    if (!(nodes_per_unit_length > 0.0)) fail(ErrorKind::InvalidArgument, "nodes_per_unit_length must be positive");
    if (!(grading >= 1.0)) fail(ErrorKind::InvalidArgument, "grading exponent must be at least 1");
    if (!(corner_cutoff >= 0.0 && corner_cutoff <= 0.2))
        fail(ErrorKind::InvalidArgument, "corner_cutoff must lie in [0, 0.2]");
    if (!(eig_tol > 0.0)) fail(ErrorKind::InvalidArgument, "eigensolver tolerance must be positive");
    if (K < 1) fail(ErrorKind::InvalidArgument, "eigencount K must be at least 1");
    if (panel_order < 4 || panel_order > 40) fail(ErrorKind::InvalidArgument, "panel_order must lie in [4, 40]");
    if (jobs < 1) fail(ErrorKind::InvalidArgument, "jobs must be positive");
}

std::size_t Mesh::steklov_count() const {
    return static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [](const MeshNode& n) { return n.condition == Condition::Steklov; }));
}

double Mesh::steklov_weight_sum() const {
    double s = 0.0;
    for (const auto& n : nodes)
        if (n.condition == Condition::Steklov) s += n.weight;
    return s;
}

Mesh Mesh::scaled(double factor) const {
    Mesh m = *this;
    const Similarity d = Similarity::dilation(factor);
    for (auto& a : m.arcs) a = a.mapped(d);
    for (auto& n : m.nodes) {
        n.x = factor * n.x;
        n.weight *= factor;
    }
    for (auto& j : m.junctions) j = factor * j;
    m.scale = scale / factor;
    return m;
}

Mesh discretize(const MixedProblem& problem, const SolverParams& params) {
    params.validate();
    const PlanarDomain& domain = problem.domain;
    if (!domain.simply_connected() && !params.multiply_connected)
        fail(ErrorKind::UnsupportedTopology, "domain has inner boundary loops; enable multiply_connected support");

    Mesh mesh;
    mesh.scale = kTargetDiameter / domain.diameter();
    const double density = params.nodes_per_unit_length * mesh.scale;
    const bool single_circle = domain.simply_connected() && domain.outer().arcs.size() == 1 &&
                               domain.outer().arcs.front().is_full_circle();

    std::vector<std::vector<bool>> junction_flags;
    for (const auto& loop : domain.loops()) {
        const auto& arcs = loop.arcs;
        const std::size_t n = arcs.size();
        std::vector<bool> flags(n, false);
        if (n > 1) {
            for (std::size_t i = 0; i < n; ++i) {
                flags[i] = is_junction(arcs[(i + n - 1) % n], arcs[i]);
                if (flags[i]) mesh.junctions.push_back(arcs[i].start());
            }
        }
        junction_flags.push_back(std::move(flags));
    }
    const double same_point = 1e-12 * domain.diameter();

    for (std::size_t li = 0; li < domain.loops().size(); ++li) {
        const auto& arcs = domain.loops()[li].arcs;
        const std::size_t first_arc = mesh.arcs.size();
        for (const auto& a : arcs) {
            mesh.arcs.push_back(a);
            mesh.arc_loop.push_back(li);
        }
        const std::size_t n = arcs.size();
        const std::vector<bool>& junction_at_start = junction_flags[li];
        for (std::size_t i = 0; i < n; ++i) {
            const Arc& arc = arcs[i];
            const std::size_t ai = first_arc + i;
            const double nominal = arc.length() * density;
            if (single_circle) {
                std::size_t count = static_cast<std::size_t>(std::ceil(nominal));
                count = std::max<std::size_t>(16, count + (count % 2));
                Panel p;
                p.arc = ai;
                p.first_node = mesh.nodes.size();
                p.order = count;
                p.periodic = true;
                for (std::size_t k = 0; k < count; ++k) {
                    const double t = static_cast<double>(k) / static_cast<double>(count);
                    mesh.nodes.push_back({arc.point(t), arc.normal(t), arc.length() / static_cast<double>(count), t, ai,
                                          mesh.panels.size(), arc.condition(), arc.is_steklov() ? arc.weight()(t) : 1.0});
                }
                mesh.panels.push_back(p);
                continue;
            }
            const GradingMap map{junction_at_start[i], junction_at_start[(i + 1) % n], params.grading};
            const bool graded = map.q != 1.0 && (map.start || map.end);
            const int order = graded ? params.panel_order
                                     : std::clamp(static_cast<int>(std::ceil(nominal)), std::min(8, params.panel_order),
                                                  params.panel_order);
            // graded maps have derivative 2 at the middle of the arc
            std::size_t nb = std::max<std::size_t>(
                1, static_cast<std::size_t>(std::ceil((graded ? 2.0 : 1.0) * nominal / order)));
            if (graded) nb = std::max<std::size_t>(nb, kMinGradedPanels);

            // junctions this arc does not grade toward itself
            std::vector<Vec2> foreign;
            for (const Vec2& j : mesh.junctions) {
                if (map.start && norm(j - arc.start()) <= same_point) continue;
                if (map.end && norm(j - arc.end()) <= same_point) continue;
                foreign.push_back(j);
            }
            auto too_long = [&](double s0, double s1) {
                if (foreign.empty()) return false;
                const double t0 = map(s0), t1 = map(s1);
                const double len = arc.length() * (t1 - t0);
                if (len <= 1e-12 * domain.diameter()) return false;
                double dist = std::numeric_limits<double>::infinity();
                for (const Vec2& j : foreign)
                    for (double t : {t0, 0.5 * (t0 + t1), t1}) dist = std::min(dist, norm(arc.point(t) - j));
                return len > dist;
            };

            const double h = 1.0 / static_cast<double>(nb);
            std::vector<std::pair<double, double>> spans;
            for (std::size_t b = 0; b < nb; ++b) {
                std::vector<std::pair<double, double>> stack{{h * static_cast<double>(b), b + 1 == nb ? 1.0 : h * static_cast<double>(b + 1)}};
                while (!stack.empty()) {
                    const auto [s0, s1] = stack.back();
                    stack.pop_back();
                    const bool own_end = (s0 == 0.0 && map.start) || (s1 == 1.0 && map.end);
                    if (!own_end && too_long(s0, s1)) {
                        const double sm = 0.5 * (s0 + s1);
                        stack.push_back({sm, s1});
                        stack.push_back({s0, sm});
                    } else {
                        spans.push_back({s0, s1});
                    }
                }
            }

            const quad::GaussRule rule = quad::gauss_legendre(order);
            for (std::size_t b = 0; b < spans.size(); ++b) {
                Panel p;
                p.arc = ai;
                p.s0 = spans[b].first;
                p.s1 = spans[b].second;
                const double w = p.s1 - p.s0;
                if (b == 0 && map.start) p.s0 += params.corner_cutoff * w;
                if (b + 1 == spans.size() && map.end) p.s1 -= params.corner_cutoff * w;
                p.map = map;
                p.t0 = map(p.s0);
                p.t1 = map(p.s1);
                p.first_node = mesh.nodes.size();
                p.order = static_cast<std::size_t>(order);
                for (int k = 0; k < order; ++k) {
                    double dt = 0.0;
                    const double t = p.param(rule.x[k], &dt);
                    mesh.nodes.push_back({arc.point(t), arc.normal(t), rule.w[k] * dt * arc.length(), t, ai,
                                          mesh.panels.size(), arc.condition(), arc.is_steklov() ? arc.weight()(t) : 1.0});
                }
                mesh.panels.push_back(p);
            }
        }
    }
    if (mesh.steklov_count() < 4 * params.K)
        fail(ErrorKind::TooFewNodes, std::to_string(params.K) + " eigenvalues requested from " +
                                         std::to_string(mesh.steklov_count()) + " Steklov nodes (need at least 4K)");
    return mesh;
}

}  // namespace steklov
