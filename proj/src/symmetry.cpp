#include "steklov/symmetry.hpp"

#include "steklov/errors.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>

namespace steklov {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Parameters in (0, 1) where the arc crosses the axis line.
std::vector<double> axis_crossings(const Arc& arc, const ReflectionAxis& axis, double tol) {
    std::vector<double> ts;
    if (arc.is_segment()) {
        const double s0 = axis.side(arc.start()), s1 = axis.side(arc.end());
        if (std::abs(s0 - s1) > tol && s0 * s1 < 0.0) ts.push_back(s0 / (s0 - s1));
    } else {
        const auto& g = arc.circle_geom();
        const double a = -axis.side(g.center) / g.radius;
        if (std::abs(a) < 1.0) {
            const double phi = std::atan2(axis.direction.y, axis.direction.x);
            for (double theta : {phi + std::asin(a), phi + std::numbers::pi - std::asin(a)}) {
                // all parameters t with theta0 + t * sweep = theta (mod 2π)
                double d = std::remainder(theta - g.theta0, kTwoPi);
                if (g.sweep < 0.0 && d > 0.0) d -= kTwoPi;
                if (g.sweep > 0.0 && d < 0.0) d += kTwoPi;
                for (; std::abs(d) <= std::abs(g.sweep) + 1e-15; d += (g.sweep > 0.0 ? kTwoPi : -kTwoPi))
                    ts.push_back(d / g.sweep);
            }
        }
    }
    std::vector<double> out;
    for (double t : ts)
        if (t * arc.length() > tol && (1.0 - t) * arc.length() > tol) out.push_back(t);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

PlanarDomain quotient_domain(const PlanarDomain& domain, const ReflectionAxis& axis, Condition chord) {
    if (chord == Condition::Steklov) fail(ErrorKind::InvalidArgument, "quotient chords carry Neumann or Dirichlet data");
    if (!domain.simply_connected())
        fail(ErrorKind::UnsupportedTopology, "quotients are implemented for simply connected domains");
    if (!has_reflection_symmetry(domain, axis)) fail(ErrorKind::NotSymmetric, "domain is not symmetric across the axis");

    const double tol = 1e-10 * domain.diameter();
    // pieces on the positive side, in boundary order
    std::vector<Arc> pieces;
    bool any_negative = false;
    for (const auto& arc : domain.outer().arcs) {
        std::vector<double> cuts = axis_crossings(arc, axis, tol);
        cuts.insert(cuts.begin(), 0.0);
        cuts.push_back(1.0);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const Arc piece = cuts[i] == 0.0 && cuts[i + 1] == 1.0 ? arc : arc.sub(cuts[i], cuts[i + 1]);
            const double side = axis.side(piece.point(0.5));
            if (side > tol) pieces.push_back(piece);
            else if (side < -tol) any_negative = true;
            else fail(ErrorKind::NotSymmetric, "boundary runs along the reflection axis");
        }
    }
    if (pieces.empty() || !any_negative) fail(ErrorKind::NotSymmetric, "axis does not cut the domain");

    // rotate so that the list starts right after an axis crossing
    std::size_t start = 0;
    const std::size_t n = pieces.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (norm(pieces[(i + n - 1) % n].end() - pieces[i].start()) > tol) {
            start = i;
            break;
        }
    }
    std::rotate(pieces.begin(), pieces.begin() + static_cast<std::ptrdiff_t>(start), pieces.end());

    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < n; ++i) {
        arcs.push_back(pieces[i]);
        const Vec2 a = pieces[i].end(), b = pieces[(i + 1) % n].start();
        if (norm(a - b) > tol) {
            if (std::abs(axis.side(a)) > tol || std::abs(axis.side(b)) > tol)
                fail(ErrorKind::NotSymmetric, "fixed-point set is not a union of chords");
            arcs.push_back(Arc::segment(a, b, chord));
        }
    }
    arcs = merge_arcs(std::move(arcs), true);

    PlanarDomain half({Loop{std::move(arcs), LoopOrientation::Outer}});
    SymmetryDescriptor sym;
    for (const auto& r : domain.symmetry().reflections) {
        if (std::abs(cross(r.direction, axis.direction)) < 1e-12 && std::abs(axis.side(r.point)) < tol) continue;
        if (has_reflection_symmetry(half, r)) sym.reflections.push_back(r);
    }
    return half.with_symmetry(std::move(sym));
}

MixedProblem quotient(const PlanarDomain& domain, const ReflectionAxis& axis, Condition chord) {
    return make_problem(quotient_domain(domain, axis, chord), ProblemKind::DNMixed);
}

SplitReport reflection_split_check(const PlanarDomain& domain, const ReflectionAxis& axis, std::size_t K,
                                   const SolverParams& params) {
    const MixedProblem full = make_problem(domain, ProblemKind::Steklov);
    const MixedProblem sn = quotient(full.domain, axis, Condition::Neumann);
    const MixedProblem sd = quotient(full.domain, axis, Condition::Dirichlet);

    SolverParams p = params;
    p.K = K;
    auto run = [&p](const MixedProblem& pr) { return solve_mixed_steklov(pr, p); };
    EigenResult rf, rn, rd;
    if (params.jobs > 1) {
        auto fn = std::async(std::launch::async, run, sn);
        auto fd = std::async(std::launch::async, run, sd);
        rf = run(full);
        rn = fn.get();
        rd = fd.get();
    } else {
        rf = run(full);
        rn = run(sn);
        rd = run(sd);
    }

    SplitReport r;
    r.full = rf.spectrum;
    r.sn = rn.spectrum;
    r.sd = rd.spectrum;
    const Spectrum halves[] = {r.sn, r.sd};
    r.merged = merge(halves, K);
    r.merged.kind = ProblemKind::Steklov;
    const double top = std::abs(r.full.values.back());
    for (std::size_t k = 0; k < K; ++k) {
        const double diff = std::abs(r.merged[k] - r.full[k]);
        const double rel = diff / std::max(std::abs(r.full[k]), 1e-3 * top);
        r.relative_mismatch.push_back(rel);
        r.max_mismatch = std::max(r.max_mismatch, rel);
        r.max_absolute = std::max(r.max_absolute, diff);
    }
    r.error_budget = max_error_estimate(rf) + max_error_estimate(rn) + max_error_estimate(rd);
    return r;
}

DihedralReport dihedral_check(const PlanarDomain& domain, const SolverParams& params) {
    const auto& sym = domain.symmetry();
    if (!sym.rotation || sym.rotation->order % 4 != 0)
        fail(ErrorKind::NotSymmetric, "domain has no declared 4-fold rotation");
    const Vec2 c = sym.rotation->center;
    if (!has_rotation_symmetry(domain, c, 4)) fail(ErrorKind::NotSymmetric, "4-fold rotation does not hold");
    const ReflectionAxis* first = nullptr;
    bool orthogonal_pair = false;
    for (const auto& a : sym.reflections) {
        if (!has_reflection_symmetry(domain, a)) continue;
        for (const auto& b : sym.reflections)
            if (std::abs(dot(a.direction, b.direction)) < 1e-12 && has_reflection_symmetry(domain, b))
                orthogonal_pair = true;
        if (!first) first = &a;
    }
    if (!first || !orthogonal_pair) fail(ErrorKind::NotSymmetric, "two orthogonal reflection axes are required");

    SolverParams p = params;
    p.K = 2;
    const MixedProblem full = make_problem(domain, ProblemKind::Steklov);
    DihedralReport r;
    r.sigma1_full = solve_mixed_steklov(full, p).spectrum[1];
    r.sigma1_neumann = solve_mixed_steklov(quotient(full.domain, *first, Condition::Neumann), p).spectrum[1];
    p.K = 1;
    r.sigma0_dirichlet = solve_mixed_steklov(quotient(full.domain, *first, Condition::Dirichlet), p).spectrum[0];
    const double lo = std::min({r.sigma1_full, r.sigma1_neumann, r.sigma0_dirichlet});
    const double hi = std::max({r.sigma1_full, r.sigma1_neumann, r.sigma0_dirichlet});
    r.max_relative_spread = (hi - lo) / std::abs(r.sigma1_full);
    return r;
}

nlohmann::json to_json(const SplitReport& r) {
    return {{"full", r.full.values},
            {"sn", r.sn.values},
            {"sd", r.sd.values},
            {"merged", r.merged.values},
            {"relative_mismatch", r.relative_mismatch},
            {"max_mismatch", r.max_mismatch},
            {"max_absolute", r.max_absolute},
            {"error_budget", r.error_budget}};
}

nlohmann::json to_json(const DihedralReport& r) {
    return {{"sigma1", r.sigma1_full},
            {"sigma1_neumann_quotient", r.sigma1_neumann},
            {"sigma0_dirichlet_quotient", r.sigma0_dirichlet},
            {"max_relative_spread", r.max_relative_spread}};
}

}  // namespace steklov
