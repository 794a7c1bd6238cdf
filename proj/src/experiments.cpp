#include "steklov/experiments.hpp"

#include "steklov/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <numbers>
#include <sstream>
#include <iomanip>

namespace steklov {

namespace {

constexpr double kPi = std::numbers::pi;

struct BoundName {
    BoundId id;
    const char* name;
};

constexpr BoundName kBoundNames[] = {
    {BoundId::Weinstock, "weinstock"},
    {BoundId::Hps, "hps"},
    {BoundId::Genus0_8pik, "genus0_8pik"},
    {BoundId::ThmASharp, "thmA_sharp"},
    {BoundId::ThmAGenus0, "thmA_genus0"},
    {BoundId::Bandle, "bandle"},
    {BoundId::BandleLower, "bandle_lower"},
    {BoundId::JohnFriedlander, "john_friedlander"},
    {BoundId::ReflectedBandle, "reflected_bandle"},
};

bool has_non_steklov(const PlanarDomain& d) { return !d.all_steklov(); }

void require(bool ok, const std::string& why) {
    if (!ok) fail(ErrorKind::NotApplicable, why);
}

/// Standard John's condition: the Steklov part is one horizontal segment I on top and the
/// domain lies in the half-strip below I.
bool standard_john(const PlanarDomain& d) {
    if (!d.simply_connected()) return false;
    const Arc* top = nullptr;
    for (const auto& a : d.outer().arcs) {
        if (!a.is_steklov()) continue;
        if (top || !a.is_segment()) return false;
        top = &a;
    }
    if (!top) return false;
    const Vec2 p0 = top->start(), p1 = top->end();
    const double tol = 1e-10 * d.diameter();
    if (std::abs(p0.y - p1.y) > tol) return false;
    // counterclockwise with the domain below means the top edge runs right to left
    if (!(p0.x > p1.x)) return false;
    const double y0 = p0.y, xl = p1.x, xr = p0.x;
    for (const auto& a : d.outer().arcs) {
        if (&a == top) continue;
        for (int i = 1; i < 32; ++i) {
            const Vec2 q = a.point(i / 32.0);
            if (q.y > y0 - tol || q.x < xl - tol || q.x > xr + tol) return false;
        }
    }
    return true;
}

int rotation_order(const PlanarDomain& d, int requested, Vec2 center) {
    if (requested > 0) return has_rotation_symmetry(d, center, requested) ? requested : 0;
    if (d.symmetry().rotation && has_rotation_symmetry(d, center, d.symmetry().rotation->order))
        return d.symmetry().rotation->order;
    return 0;
}

EigenResult solve_k(const MixedProblem& pr, std::size_t count, const SolverParams& params) {
    SolverParams p = params;
    p.K = count;
    p.estimate_error = true;
    return solve_mixed_steklov(pr, p);
}

}  // namespace

std::string_view to_string(BoundId id) {
    for (const auto& b : kBoundNames)
        if (b.id == id) return b.name;
    return "?";
}

BoundId bound_id_from_string(std::string_view s) {
    for (const auto& b : kBoundNames)
        if (s == b.name) return b.id;
    fail(ErrorKind::InvalidArgument, "unknown bound id '" + std::string(s) + "'");
}

double BoundSpec::value() const {
    if (k < 1 && id != BoundId::ReflectedBandle) fail(ErrorKind::InvalidArgument, "bound index must be at least 1");
    switch (id) {
        case BoundId::Weinstock: return 2.0 * kPi;
        case BoundId::Hps: return 2.0 * kPi * k;
        case BoundId::Genus0_8pik: return 8.0 * kPi * k;
        case BoundId::ThmASharp:
        case BoundId::JohnFriedlander: return (2.0 * k - 1.0) * kPi;
        case BoundId::ThmAGenus0: return 4.0 * (2.0 * k - 1.0) * kPi;
        case BoundId::Bandle: return (k % 2 == 1 ? k + 1.0 : static_cast<double>(k)) * kPi;
        case BoundId::BandleLower:
            if (p < 1) fail(ErrorKind::InvalidArgument, "bandle_lower needs the rotation order p");
            return p * kPi;
        case BoundId::ReflectedBandle: return k * kPi;
    }
    return 0.0;
}

std::string BoundSpec::applicability() const {
    switch (id) {
        case BoundId::Weinstock: return "simply connected, full Steklov, k = 1";
        case BoundId::Hps: return "simply connected, full Steklov";
        case BoundId::Genus0_8pik: return "planar (genus 0), full Steklov";
        case BoundId::ThmASharp: return "simply connected, Steklov part and its complement each connected";
        case BoundId::ThmAGenus0: return "planar, non-Steklov part confined to one boundary component";
        case BoundId::Bandle: return "simply connected, full Steklov, p-fold rotation, k <= p - 1";
        case BoundId::BandleLower: return "simply connected, full Steklov, p-fold rotation, k >= p";
        case BoundId::JohnFriedlander: return "Steklov part a horizontal top segment (standard John's condition)";
        case BoundId::ReflectedBandle:
            return "one Neumann segment whose double has p-fold rotation, k < floor((p + 1) / 2)";
    }
    return "";
}

ProblemKind bound_problem_kind(BoundId id) {
    switch (id) {
        case BoundId::ThmASharp:
        case BoundId::ThmAGenus0: return ProblemKind::DNMixed;
        case BoundId::JohnFriedlander:
        case BoundId::ReflectedBandle: return ProblemKind::SN;
        default: return ProblemKind::Steklov;
    }
}

BoundReport evaluate_bound(const MixedProblem& problem, const BoundSpec& spec, const SolverParams& params) {
    const PlanarDomain& d = problem.domain;
    BoundReport r;
    r.spec = spec;
    const std::size_t k = static_cast<std::size_t>(std::max(spec.k, 0));
    r.length = d.steklov_length();
    EigenResult res;
    switch (spec.id) {
        case BoundId::Weinstock:
            require(spec.k == 1, "weinstock is stated for k = 1");
            [[fallthrough]];
        case BoundId::Hps:
            require(d.simply_connected(), "domain is not simply connected");
            [[fallthrough]];
        case BoundId::Genus0_8pik: {
            require(problem.kind == ProblemKind::Steklov, "bound concerns the full Steklov problem");
            res = solve_k(problem, k + 1, params);
            r.value = res.spectrum[k];
            r.error_estimate = res.error_estimate[k];
            break;
        }
        case BoundId::Bandle:
        case BoundId::BandleLower: {
            require(problem.kind == ProblemKind::Steklov && d.simply_connected(),
                    "bound concerns simply connected full Steklov domains");
            const Vec2 c = d.symmetry().rotation ? d.symmetry().rotation->center : Vec2{};
            const int p = rotation_order(d, spec.p, c);
            require(p >= 2, "domain has no verified rotation symmetry");
            if (spec.id == BoundId::Bandle) require(spec.k <= p - 1, "bandle needs k <= p - 1");
            else require(spec.k >= p, "bandle_lower needs k >= p");
            r.spec.p = p;
            res = solve_k(problem, k + 1, params);
            r.value = res.spectrum[k];
            r.error_estimate = res.error_estimate[k];
            break;
        }
        case BoundId::ThmASharp:
        case BoundId::ThmAGenus0: {
            require(has_non_steklov(d), "decomposition is trivial");
            const BoundaryData data = boundary_data(d);
            if (spec.id == BoundId::ThmASharp) {
                require(d.simply_connected() && data.n() == 0 && data.m() == 1,
                        "Steklov part and its complement must both be connected");
            } else {
                std::size_t loops_with_star = 0;
                for (const auto& l : d.loops())
                    if (std::any_of(l.arcs.begin(), l.arcs.end(), [](const Arc& a) { return !a.is_steklov(); }))
                        ++loops_with_star;
                require(loops_with_star == 1, "non-Steklov part meets several boundary components");
            }
            const EigenResult rn = solve_k(make_problem(d, ProblemKind::SN), k + 1, params);
            const EigenResult rd = solve_k(make_problem(d, ProblemKind::SD), k, params);
            const bool use_n = rn.spectrum[k] <= rd.spectrum[k - 1];
            res = use_n ? rn : rd;
            r.value = use_n ? rn.spectrum[k] : rd.spectrum[k - 1];
            r.error_estimate = use_n ? rn.error_estimate[k] : rd.error_estimate[k - 1];
            break;
        }
        case BoundId::JohnFriedlander: {
            require(standard_john(d), "domain does not satisfy the standard John's condition");
            res = solve_k(make_problem(d, ProblemKind::SN), k + 1, params);
            r.value = res.spectrum[k];
            r.error_estimate = res.error_estimate[k];
            break;
        }
        case BoundId::ReflectedBandle: {
            require(d.simply_connected(), "domain is not simply connected");
            const Arc* chord = nullptr;
            for (const auto& a : d.outer().arcs) {
                if (a.is_steklov()) continue;
                require(!chord && a.is_segment(), "non-Steklov part must be a single segment");
                chord = &a;
            }
            require(chord != nullptr, "domain has no Neumann segment");
            const ReflectionAxis axis(chord->start(), chord->end() - chord->start());
            const PlanarDomain twin = double_domain(make_problem(d, ProblemKind::SN).domain, axis);
            const Vec2 c = 0.5 * (chord->start() + chord->end());
            int p = spec.p;
            if (p <= 0) {
                for (int q = 12; q >= 2 && p <= 0; --q)
                    if (has_rotation_symmetry(twin, c, q)) p = q;
            } else if (!has_rotation_symmetry(twin, c, p)) {
                p = 0;
            }
            require(p >= 2, "the double has no rotation symmetry about the segment midpoint");
            require(spec.k < (p + 1) / 2, "reflected_bandle needs k < floor((p + 1) / 2)");
            r.spec.p = p;
            res = solve_k(make_problem(d, ProblemKind::SN), k + 1, params);
            r.value = res.spectrum[k];
            r.error_estimate = res.error_estimate[k];
            break;
        }
    }
    r.value *= r.length;
    r.error_estimate *= r.length;
    r.bound = r.spec.value();
    r.margin = spec.lower() ? r.value - r.bound : r.bound - r.value;
    r.slack = std::max(1e-6 * r.bound, 10.0 * r.error_estimate);
    r.satisfied = r.margin >= -r.slack;
    r.diagnostics = res.diagnostics;
    return r;
}

SweepTable sweep_family(const FamilySpec& family, const std::vector<double>& schedule, const BoundSpec& bound,
                        const SolverParams& params) {
    SweepTable t;
    t.family = family;
    t.bound = bound;
    const ProblemKind kind = bound_problem_kind(bound.id);
    auto run = [&](double value, const SolverParams& p) {
        const FamilySpec f = with_parameter(family, value);
        return SweepRow{value, evaluate_bound(make_problem(make_family(f), kind), bound, p)};
    };
    t.rows.resize(schedule.size());
    if (params.jobs > 1 && schedule.size() > 1) {
        SolverParams inner = params;
        inner.jobs = 1;
        const std::size_t width = static_cast<std::size_t>(params.jobs);
        for (std::size_t start = 0; start < schedule.size(); start += width) {
            std::vector<std::future<SweepRow>> batch;
            for (std::size_t i = start; i < std::min(schedule.size(), start + width); ++i)
                batch.push_back(std::async(std::launch::async, run, schedule[i], inner));
            for (std::size_t i = 0; i < batch.size(); ++i) t.rows[start + i] = batch[i].get();
        }
    } else {
        for (std::size_t i = 0; i < schedule.size(); ++i) t.rows[i] = run(schedule[i], params);
    }
    t.all_satisfied = std::all_of(t.rows.begin(), t.rows.end(), [](const SweepRow& r) { return r.report.satisfied; });
    t.monotone_toward_bound = t.rows.size() >= 2;
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
        const auto& a = t.rows[i - 1].report;
        const auto& b = t.rows[i].report;
        if (!(std::abs(b.bound - b.value) < std::abs(a.bound - a.value))) t.monotone_toward_bound = false;
    }
    return t;
}

std::string_view to_string(Ordering o) {
    switch (o) {
        case Ordering::Strict: return "strict";
        case Ordering::Tie: return "tie";
        case Ordering::Violated: return "violated";
    }
    return "?";
}

namespace {

bool same_arc(const Arc& a, const Arc& b, double tol) {
    if (a.is_segment() != b.is_segment() || a.condition() != b.condition()) return false;
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0})
        if (norm(a.point(t) - b.point(t)) > tol || std::abs(a.weight()(t) - b.weight()(t)) > 1e-12) return false;
    return true;
}

std::vector<Arc> arcs_where(const PlanarDomain& d, bool steklov) {
    std::vector<Arc> out;
    for (const auto& l : d.loops())
        for (const auto& a : l.arcs)
            if (a.is_steklov() == steklov) out.push_back(a);
    return out;
}

bool same_arc_sets(const std::vector<Arc>& x, const std::vector<Arc>& y, double tol) {
    if (x.size() != y.size()) return false;
    std::vector<bool> used(y.size(), false);
    for (const auto& a : x) {
        bool found = false;
        for (std::size_t j = 0; j < y.size() && !found; ++j) {
            if (!used[j] && same_arc(a, y[j], tol)) used[j] = found = true;
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace

MonotonicityReport monotonicity_check(const MixedProblem& small, const MixedProblem& big, Condition kind,
                                      std::size_t K, const SolverParams& params, double tolerance) {
    if (kind == Condition::Steklov) fail(ErrorKind::InvalidArgument, "monotonicity compares Neumann or Dirichlet data");
    const double tol = 1e-10 * std::max(small.domain.diameter(), big.domain.diameter());
    if (!same_arc_sets(arcs_where(small.domain, true), arcs_where(big.domain, true), tol))
        fail(ErrorKind::SteklovMismatch, "the two domains have different Steklov boundaries");
    if (same_arc_sets(arcs_where(small.domain, false), arcs_where(big.domain, false), tol))
        fail(ErrorKind::NotProper, "the two domains coincide");
    for (const auto& a : arcs_where(small.domain, false)) {
        for (int i = 1; i < 8; ++i) {
            const Vec2 q = a.point(i / 8.0);
            bool on_boundary = false;
            for (const auto& b : arcs_where(big.domain, false)) on_boundary = on_boundary || b.distance_to(q) < tol;
            if (!on_boundary && !big.domain.contains(q))
                fail(ErrorKind::NotProper, "first domain is not contained in the second");
        }
    }

    const ProblemKind pk = kind == Condition::Neumann ? ProblemKind::SN : ProblemKind::SD;
    SolverParams p = params;
    p.K = K + 1;
    p.estimate_error = false;
    const Spectrum a = solve_mixed_steklov(make_problem(small.domain, pk), p).spectrum;
    const Spectrum b = solve_mixed_steklov(make_problem(big.domain, pk), p).spectrum;

    MonotonicityReport r;
    r.kind = kind;
    r.tolerance = tolerance;
    r.passed = r.all_strict = true;
    for (std::size_t k = 1; k <= K; ++k) {
        const double gap = kind == Condition::Neumann ? b[k] - a[k] : a[k] - b[k];
        const Ordering o = gap > tolerance ? Ordering::Strict : gap >= -tolerance ? Ordering::Tie : Ordering::Violated;
        r.rows.push_back({k, a[k], b[k], o});
        r.passed = r.passed && o != Ordering::Violated;
        r.all_strict = r.all_strict && o == Ordering::Strict;
    }
    return r;
}

std::map<std::string, std::vector<double>> default_schedules() {
    return {
        {"gp_chain", {0.2, 0.1, 0.05}},
        {"rot_cluster", {0.1, 0.05}},
        {"bandle_chain", {0.2, 0.1, 0.05}},
        {"bandle_flower", {3, 4, 5}},
        {"strip", {1, 2, 3}},
    };
}

std::map<std::string, std::vector<double>> load_schedule_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidArgument, "cannot open schedule manifest " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::InvalidArgument, std::string("malformed schedule manifest: ") + e.what());
    }
    std::map<std::string, std::vector<double>> out;
    const nlohmann::json& table = j.contains("schedules") ? j.at("schedules") : j;
    for (auto it = table.begin(); it != table.end(); ++it) {
        if (!it->is_array()) fail(ErrorKind::InvalidArgument, "schedule '" + it.key() + "' is not a list");
        out[it.key()] = it->get<std::vector<double>>();
    }
    return out;
}

nlohmann::json to_json(const BoundReport& r) {
    nlohmann::json j = {{"bound", to_string(r.spec.id)},
                        {"k", r.spec.k},
                        {"value", r.value},
                        {"bound_value", r.bound},
                        {"margin", r.margin},
                        {"slack", r.slack},
                        {"satisfied", r.satisfied},
                        {"lower_bound", r.spec.lower()},
                        {"length", r.length},
                        {"error_estimate", r.error_estimate},
                        {"diagnostics",
                         {{"asymmetry", r.diagnostics.asymmetry},
                          {"condition", r.diagnostics.condition},
                          {"nodes", r.diagnostics.nodes}}}};
    if (r.spec.p > 0) j["p"] = r.spec.p;
    return j;
}

nlohmann::json to_json(const SweepTable& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : t.rows) {
        nlohmann::json j = to_json(row.report);
        j["parameter"] = row.parameter;
        rows.push_back(std::move(j));
    }
    return {{"family", describe(t.family)},
            {"bound", to_string(t.bound.id)},
            {"k", t.bound.k},
            {"rows", rows},
            {"monotone_toward_bound", t.monotone_toward_bound},
            {"all_satisfied", t.all_satisfied}};
}

std::string to_csv(const SweepTable& t) {
    std::ostringstream out;
    out << std::setprecision(15) << "parameter,value,bound,margin,satisfied\n";
    for (const auto& row : t.rows)
        out << row.parameter << ',' << row.report.value << ',' << row.report.bound << ',' << row.report.margin << ','
            << (row.report.satisfied ? 1 : 0) << '\n';
    return out.str();
}

nlohmann::json to_json(const MonotonicityReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"k", row.k}, {"small", row.small}, {"big", row.big}, {"ordering", to_string(row.ordering)}});
    return {{"kind", to_string(r.kind)},
            {"tolerance", r.tolerance},
            {"rows", rows},
            {"passed", r.passed},
            {"all_strict", r.all_strict}};
}

}  // namespace steklov
