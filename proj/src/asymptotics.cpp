#include "steklov/asymptotics.hpp"

#include "steklov/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace steklov {

DecayVerdict decay_verdict(const std::vector<ResidualRow>& rows) {
    DecayVerdict v;
    if (rows.empty()) return v;
    const std::size_t half = rows.size() / 2;
    double scale = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        (i < half ? v.lower_window_max : v.upper_window_max) =
            std::max(i < half ? v.lower_window_max : v.upper_window_max, rows[i].residual);
        scale = std::max(scale, std::abs(rows[i].model));
    }
    // residuals at rounding level count as resolved
    const double floor = 1e-9 * std::max(scale, 1.0);
    v.two_window = v.upper_window_max < v.lower_window_max || v.upper_window_max <= floor;

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (const auto& r : rows) {
        if (!(r.residual > 0.0) || r.k == 0) continue;
        const double x = std::log(static_cast<double>(r.k)), y = std::log(r.residual);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n >= 2) {
        const double den = n * sxx - sx * sx;
        if (den > 0.0) v.log_slope = (n * sxy - sx * sy) / den;
    }
    return v;
}

void check_junction_hypothesis(const PlanarDomain& domain) {
    for (const auto& l : domain.loops()) {
        const std::size_t n = l.arcs.size();
        if (n < 2) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const Arc& a = l.arcs[i];
            const Arc& b = l.arcs[(i + 1) % n];
            const Vec2 ta = a.tangent(1.0), tb = b.tangent(0.0);
            if (a.is_steklov() && b.is_steklov()) {
                if (std::abs(std::atan2(cross(ta, tb), dot(ta, tb))) > 1e-8)
                    fail(ErrorKind::HypothesisViolated, "Steklov boundary has a corner");
            } else if (a.is_steklov() != b.is_steklov()) {
                const Arc& other = a.is_steklov() ? b : a;
                if (!other.is_segment())
                    fail(ErrorKind::HypothesisViolated, "non-Steklov arc at a junction is not straight");
                if (std::abs(dot(ta, tb)) > 1e-9)
                    fail(ErrorKind::HypothesisViolated, "junction is not orthogonal");
            }
        }
    }
}

AsymptoticsReport asymptotics_report(const MixedProblem& problem, std::size_t kmin, std::size_t kmax,
                                     const SolverParams& params) {
    if (kmin > kmax) fail(ErrorKind::InvalidArgument, "empty index range");
    check_junction_hypothesis(problem.domain);
    SolverParams p = params;
    p.K = kmax + 1;
    p.estimate_error = false;
    const std::size_t resolved = discretize(problem, p).steklov_count() / 6;
    if (kmax > resolved)
        fail(ErrorKind::UnresolvedRange, "index " + std::to_string(kmax) + " exceeds the resolved range (" +
                                             std::to_string(resolved) + ")");

    AsymptoticsReport r;
    r.kind = problem.kind;
    r.data = boundary_data(problem.domain);
    const Spectrum model = model_spectrum(r.data, kmax + 1);
    const Spectrum computed = solve_mixed_steklov(problem, p).spectrum;
    for (std::size_t k = kmin; k <= kmax; ++k)
        r.rows.push_back({k, computed[k], model[k], std::abs(computed[k] - model[k])});
    r.verdict = decay_verdict(r.rows);
    return r;
}

ShiftReport sn_sd_shift(const PlanarDomain& domain, std::size_t kmin, std::size_t kmax, const SolverParams& params,
                        long m) {
    if (domain.all_steklov()) fail(ErrorKind::NotApplicable, "domain has no Neumann or Dirichlet part");
    if (kmin > kmax) fail(ErrorKind::InvalidArgument, "empty index range");
    const MixedProblem sn = make_problem(domain, ProblemKind::SN);
    const MixedProblem sd = make_problem(domain, ProblemKind::SD);
    ShiftReport r;
    r.m = m >= 0 ? static_cast<std::size_t>(m) : boundary_data(sn.domain).m();
    if (r.m == 0) fail(ErrorKind::NotApplicable, "no Steklov intervals; SN and SD coincide");

    SolverParams p = params;
    p.estimate_error = false;
    p.K = kmax + r.m + 1;
    const Spectrum n = solve_mixed_steklov(sn, p).spectrum;
    p.K = kmax + 1;
    const Spectrum d = solve_mixed_steklov(sd, p).spectrum;
    for (std::size_t k = kmin; k <= kmax; ++k)
        r.rows.push_back({k, n[k + r.m], d[k], std::abs(n[k + r.m] - d[k])});
    r.verdict = decay_verdict(r.rows);
    return r;
}

MultiplicityReport multiplicity_report(const Spectrum& spectrum, const BoundaryData& data, std::size_t burn_in,
                                       double rel_tol) {
    MultiplicityReport r;
    r.bound = 2 * data.n() + data.m();
    r.burn_in = burn_in;
    std::vector<double> v = spectrum.values;
    std::sort(v.begin(), v.end());
    const double gap = v.size() >= 2 ? (v.back() - v.front()) / static_cast<double>(v.size() - 1) : 1.0;
    r.tolerance = rel_tol * (gap > 0.0 ? gap : 1.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!r.clusters.empty() && v[i] - v[i - 1] <= r.tolerance) {
            Cluster& c = r.clusters.back();
            c.value = (c.value * c.multiplicity + v[i]) / (c.multiplicity + 1);
            ++c.multiplicity;
        } else {
            r.clusters.push_back({v[i], i, 1});
        }
    }
    // a cluster reaching the end of the list may be truncated; it still counts
    for (const auto& c : r.clusters)
        if (c.first >= burn_in) r.largest_after_burn_in = std::max(r.largest_after_burn_in, c.multiplicity);
    r.passed = r.largest_after_burn_in <= r.bound;
    return r;
}

namespace {

nlohmann::json rows_json(const std::vector<ResidualRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows)
        out.push_back({{"k", r.k}, {"computed", r.computed}, {"model", r.model}, {"residual", r.residual}});
    return out;
}

nlohmann::json verdict_json(const DecayVerdict& v) {
    return {{"lower_window_max", v.lower_window_max},
            {"upper_window_max", v.upper_window_max},
            {"two_window", v.two_window},
            {"log_slope", v.log_slope}};
}

}  // namespace

nlohmann::json to_json(const AsymptoticsReport& r) {
    return {{"problem_kind", to_string(r.kind)},
            {"boundary_data", {{"L_S", r.data.L_S}, {"L_D", r.data.L_D}, {"L_N", r.data.L_N}, {"L_DN", r.data.L_DN}}},
            {"rows", rows_json(r.rows)},
            {"verdict", verdict_json(r.verdict)}};
}

nlohmann::json to_json(const ShiftReport& r) {
    return {{"m", r.m}, {"rows", rows_json(r.rows)}, {"verdict", verdict_json(r.verdict)}};
}

nlohmann::json to_json(const MultiplicityReport& r) {
    nlohmann::json clusters = nlohmann::json::array();
    for (const auto& c : r.clusters)
        clusters.push_back({{"value", c.value}, {"first_index", c.first}, {"multiplicity", c.multiplicity}});
    return {{"clusters", clusters},
            {"bound", r.bound},
            {"burn_in", r.burn_in},
            {"tolerance", r.tolerance},
            {"largest_after_burn_in", r.largest_after_burn_in},
            {"passed", r.passed}};
}

std::string residual_csv(const std::vector<ResidualRow>& rows) {
    std::ostringstream out;
    out << std::setprecision(15) << "k,computed,model,residual\n";
    for (const auto& r : rows) out << r.k << ',' << r.computed << ',' << r.model << ',' << r.residual << '\n';
    return out.str();
}

}  // namespace steklov
