// Acceptance run: one PASS/FAIL line per criterion. Tolerances are fixed here.
#include "steklov/asymptotics.hpp"
#include "steklov/dtn_solver.hpp"
#include "steklov/errors.hpp"
#include "steklov/experiments.hpp"
#include "steklov/families.hpp"
#include "steklov/model_spectra.hpp"
#include "steklov/symmetry.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace steklov;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [fail: " << what << "]";
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SolverParams base_params(std::size_t K, bool estimate = true) {
    SolverParams p;
    p.K = K;
    p.estimate_error = estimate;
    return p;
}

Spectrum solve(const PlanarDomain& d, ProblemKind kind, std::size_t K, bool estimate = false) {
    return solve_mixed_steklov(make_problem(d, kind), base_params(K, estimate)).spectrum;
}

// smallest density (from the default upward) giving at least `per_eigenvalue`·K Steklov nodes
SolverParams resolving_params(const MixedProblem& pr, std::size_t K, std::size_t per_eigenvalue) {
    SolverParams p = base_params(K, false);
    p.K = 1;
    while (discretize(pr, p).steklov_count() < per_eigenvalue * K) p.nodes_per_unit_length *= 1.25;
    p.K = K;
    return p;
}

std::vector<std::pair<std::string, PlanarDomain>> corpus() {
    std::vector<std::pair<std::string, PlanarDomain>> c;
    c.emplace_back("disk", make_family(FamilySpec::disk()));
    c.emplace_back("half_disk N", make_family(FamilySpec::half_disk(1.0, Condition::Neumann)));
    c.emplace_back("half_disk D", make_family(FamilySpec::half_disk(1.0, Condition::Dirichlet)));
    c.emplace_back("quarter_disk", make_family(FamilySpec::quarter_disk()));
    c.emplace_back("gp_chain(2,0.1)", make_family(FamilySpec::gp_chain(2, 0.1)));
    c.emplace_back("bandle_flower(3)", make_family(FamilySpec::bandle_flower(3)));
    c.emplace_back("bandle_chain(3,2,0.1)", make_family(FamilySpec::bandle_chain(3, 2, 0.1)));
    c.emplace_back("rot_cluster(3,1,0.1)", make_family(FamilySpec::rot_cluster(3, 1, 0.1)));
    c.emplace_back("strip(1,2)", make_family(FamilySpec::strip(1.0, 2.0)));
    c.emplace_back("random_blob(7)", make_family(random_blob(7)));
    return c;
}

// 1. closed-form model spectra
Outcome model_exactness() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t K = 100;
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
    double worst = 0.0;

    const double ell = 2.0 * kPi, bar = kPi;
    const Spectrum disk = disk_spectrum(ell, K);
    const Spectrum hn = half_disk_spectrum(bar, Condition::Neumann, K);
    const Spectrum hd = half_disk_spectrum(bar, Condition::Dirichlet, K);
    const Spectrum qdn = quarter_disk_spectrum(bar / 2.0, K);
    const Spectrum qd = quarter_disk_spectrum(bar / 2.0, K, ProblemKind::SD);
    const Spectrum qn = quarter_disk_spectrum(bar / 2.0, K, ProblemKind::SN);
    for (std::size_t i = 0; i < K; ++i) {
        const double j = static_cast<double>((i + 1) / 2);
        if (i == 0) o.check(disk[0] == 0.0 && hn[0] == 0.0, "zero eigenvalue");
        else worst = std::max({worst, rel(disk[i], 2.0 * kPi * j / ell), rel(hn[i], kPi * i / bar)});
        worst = std::max(worst, rel(hd[i], kPi * (i + 1) / bar));
        worst = std::max(worst, rel(qdn[i], kPi * (2.0 * i + 1.0) / (2.0 * (bar / 2.0))));
        worst = std::max({worst, rel(qd[i], kPi * (i + 1) / (bar / 2.0))});
        if (i > 0) worst = std::max(worst, rel(qn[i], kPi * i / (bar / 2.0)));
    }
    // SD(quarter) agrees with SD(half) of the same Steklov length
    for (double lb : {0.7, 1.0, kPi / 2.0, 3.3}) {
        const Spectrum a = quarter_disk_spectrum(lb, K, ProblemKind::SD), b = half_disk_spectrum(lb, Condition::Dirichlet, K);
        for (std::size_t i = 0; i < K; ++i) worst = std::max(worst, rel(a[i], b[i]));
        const Spectrum parts[] = {quarter_disk_spectrum(lb, K), quarter_disk_spectrum(lb, K, ProblemKind::SD)};
        const Spectrum merged = merge(parts, K);
        const Spectrum half = half_disk_spectrum(2.0 * lb, Condition::Dirichlet, K);
        for (std::size_t i = 0; i < K; ++i) worst = std::max(worst, rel(merged[i], half[i]));
    }
    const double t = seconds_since(t0);
    o.check(worst <= 1e-15, "relative error above 1e-15");
    o.check(t < 1.0, "runtime");
    o.detail << "max relative error " << worst << ", " << t << " s";
    return o;
}

// 2. solver against closed forms
Outcome solver_accuracy() {
    Outcome o;
    {
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = solve_mixed_steklov(make_problem(make_family(FamilySpec::disk()), ProblemKind::Steklov),
                                           base_params(20, false));
        double err = 0.0;
        for (std::size_t i = 0; i < 20; ++i) err = std::max(err, std::abs(r.spectrum[i] - static_cast<double>((i + 1) / 2)));
        const double t = seconds_since(t0);
        o.check(err < 1e-8 && r.diagnostics.nodes <= 512 && t < 10.0, "unit disk");
        o.detail << "disk err " << err << " (" << r.diagnostics.nodes << " nodes, " << t << " s)";
    }
    {
        double err = 0.0;
        for (Condition c : {Condition::Neumann, Condition::Dirichlet}) {
            const auto d = make_family(FamilySpec::half_disk(1.0, c));
            const Spectrum s = solve(d, c == Condition::Neumann ? ProblemKind::SN : ProblemKind::SD, 10);
            const Spectrum m = half_disk_spectrum(kPi, c, 10);
            for (std::size_t i = 0; i < 10; ++i) err = std::max(err, std::abs(s[i] - m[i]));
        }
        o.check(err < 1e-4, "half-disk");
        o.detail << "; half-disk err " << err;
    }
    {
        const Spectrum s = solve(make_family(FamilySpec::quarter_disk()), ProblemKind::DNMixed, 8);
        const Spectrum m = quarter_disk_spectrum(kPi / 2.0, 8);
        double err = 0.0;
        for (std::size_t i = 0; i < 8; ++i) err = std::max(err, std::abs(s[i] - m[i]));
        o.check(err < 1e-4, "quarter-disk DN");
        o.detail << "; quarter DN err " << err;
    }
    {
        double err = 0.0;
        for (int n = 1; n <= 3; ++n) {
            const Spectrum s = solve(make_family(FamilySpec::strip(1.0, n)), ProblemKind::SN, 2);
            err = std::max(err, std::abs(s[1] - kPi * std::tanh(kPi * n)));
        }
        o.check(err < 1e-6, "strip");
        o.detail << "; strip err " << err;
    }
    return o;
}

// 3. reflection doubling
Outcome doubling_identity() {
    Outcome o;
    struct Case {
        std::string name;
        PlanarDomain domain;
        ReflectionAxis axis;
    };
    std::vector<Case> cases;
    cases.push_back({"disk", make_family(FamilySpec::disk()), ReflectionAxis({0, 0}, {1, 0})});
    cases.push_back({"gp_chain(2,0.1)", make_family(FamilySpec::gp_chain(2, 0.1)), ReflectionAxis({0, 0}, {0, 1})});
    cases.push_back({"blob 11", make_family(random_blob(11, true)), ReflectionAxis({0, 0}, {1, 0})});
    cases.push_back({"blob 12", make_family(random_blob(12, true)), ReflectionAxis({0, 0}, {1, 0})});
    const PlanarDomain flower = make_family(FamilySpec::bandle_flower(4));
    cases.push_back({"bandle_flower(4)", flower, flower.symmetry().reflections.front()});
    SolverParams p = base_params(12, true);
    for (const auto& c : cases) {
        const SplitReport r = reflection_split_check(c.domain, c.axis, 12, p);
        const double tol = 10.0 * r.error_budget;
        o.check(r.max_absolute <= tol, c.name);
        o.detail << c.name << ' ' << r.max_absolute << "/" << tol << "; ";
    }
    return o;
}

// 4. inequality catalog
Outcome inequality_suite() {
    Outcome o;
    const SolverParams p = base_params(6, true);
    {
        const BoundReport r =
            evaluate_bound(make_problem(make_family(FamilySpec::disk()), ProblemKind::Steklov), {BoundId::Weinstock, 1, 0}, p);
        o.check(std::abs(r.margin) < 1e-6, "weinstock on the disk");
        o.detail << "disk margin " << r.margin;
    }
    double min_blob = 1e300;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const BoundReport r = evaluate_bound(make_problem(make_family(random_blob(seed)), ProblemKind::Steklov),
                                             {BoundId::Weinstock, 1, 0}, p);
        min_blob = std::min(min_blob, r.margin);
    }
    o.check(min_blob > 0.0, "weinstock on blobs");
    o.detail << "; min blob margin " << min_blob;

    int evaluated = 0, violated = 0;
    for (const auto& [name, d] : corpus()) {
        for (BoundId id : {BoundId::Hps, BoundId::Genus0_8pik, BoundId::ThmASharp, BoundId::ThmAGenus0}) {
            for (int k = 1; k <= 3; ++k) {
                try {
                    const BoundReport r = evaluate_bound(make_problem(d, bound_problem_kind(id)), {id, k, 0}, p);
                    ++evaluated;
                    if (!r.satisfied) {
                        ++violated;
                        o.check(false, name + " " + std::string(to_string(id)) + " k=" + std::to_string(k));
                    }
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::NotApplicable) throw;
                }
            }
        }
    }
    o.detail << "; corpus " << evaluated << " evaluations, " << violated << " violated";

    const BoundReport sharp = evaluate_bound(make_problem(make_family(FamilySpec::half_disk()), ProblemKind::DNMixed),
                                             {BoundId::ThmASharp, 1, 0}, p);
    o.check(std::abs(sharp.margin) < 1e-4, "half-disk attains thmA_sharp");
    o.detail << "; half-disk thmA_sharp margin " << sharp.margin;
    return o;
}

// 5. extremal family trends
Outcome sharpness_trends() {
    Outcome o;
    SolverParams p = base_params(8, true);
    p.jobs = 3;
    {
        const auto t0 = std::chrono::steady_clock::now();
        const SweepTable t = sweep_family(FamilySpec::gp_chain(2, 0.2), {0.2, 0.1, 0.05}, {BoundId::Hps, 2, 0}, p);
        bool increasing = true, below = true;
        o.detail << "gp_chain σ_2·L:";
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            o.detail << ' ' << t.rows[i].report.value;
            below = below && t.rows[i].report.value < 4.0 * kPi;
            if (i > 0) increasing = increasing && t.rows[i].report.value > t.rows[i - 1].report.value;
        }
        const double s = seconds_since(t0);
        o.check(increasing, "gp_chain increasing");
        o.check(below, "gp_chain below 4π");
        o.check(s < 120.0, "gp_chain time");
    }
    {
        const auto t0 = std::chrono::steady_clock::now();
        o.detail << "; bandle_flower σ_p·L - pπ:";
        for (int q : {3, 4, 5}) {
            const BoundReport r = evaluate_bound(make_problem(make_family(FamilySpec::bandle_flower(q)), ProblemKind::Steklov),
                                                 {BoundId::BandleLower, q, q}, p);
            o.detail << ' ' << r.margin;
            o.check(r.value > q * kPi, "bandle_flower(" + std::to_string(q) + ")");
        }
        o.check(seconds_since(t0) < 120.0, "bandle_flower time");
    }
    {
        const auto t0 = std::chrono::steady_clock::now();
        const SweepTable t = sweep_family(FamilySpec::rot_cluster(3, 1, 0.1), {0.1, 0.05}, {BoundId::Genus0_8pik, 4, 0}, p);
        o.detail << "; rot_cluster σ_4·L:";
        bool ok = true;
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            o.detail << ' ' << t.rows[i].report.value;
            ok = ok && t.rows[i].report.value < 8.0 * kPi;
            if (i > 0) ok = ok && t.rows[i].report.value > t.rows[i - 1].report.value;
        }
        o.check(ok, "rot_cluster increasing below 8π");
        o.check(seconds_since(t0) < 120.0, "rot_cluster time");
    }
    return o;
}

// 6. strip nesting
Outcome monotonicity() {
    Outcome o;
    SolverParams p = base_params(6, false);
    p.nodes_per_unit_length = 130.0;
    const MixedProblem small = make_problem(make_family(FamilySpec::strip(1.0, 1.0)), ProblemKind::DNMixed);
    const MixedProblem big = make_problem(make_family(FamilySpec::strip(1.0, 2.0)), ProblemKind::DNMixed);
    for (Condition c : {Condition::Neumann, Condition::Dirichlet}) {
        const double tol = c == Condition::Neumann ? 1e-8 : 1e-6;
        const MonotonicityReport r = monotonicity_check(small, big, c, 5, p, tol);
        int strict = 0, resolvable = 0;
        for (const auto& row : r.rows) {
            // separation of variables: σ = πk·tanh(πkh) (N), πk·coth(πkh) (D, shifted index)
            const double kk = static_cast<double>(c == Condition::Neumann ? row.k : row.k + 1);
            const double gap = c == Condition::Neumann ? kPi * kk * (std::tanh(2 * kPi * kk) - std::tanh(kPi * kk))
                                                       : kPi * kk * (1.0 / std::tanh(kPi * kk) - 1.0 / std::tanh(2 * kPi * kk));
            if (gap > tol) {
                ++resolvable;
                if (row.ordering == Ordering::Strict) ++strict;
            }
        }
        const std::string name = c == Condition::Neumann ? "N" : "D";
        o.check(r.passed, name + " ordering violated");
        o.check(strict == resolvable, name + " strict ordering missed");
        o.detail << name << ": " << strict << "/" << resolvable << " resolvable strict, no violations=" << r.passed << "; ";
    }
    return o;
}

// 7. asymptotic laws
Outcome asymptotics() {
    Outcome o;
    std::vector<std::pair<std::string, MixedProblem>> cases;
    for (std::uint64_t seed : {21, 22, 23})
        cases.emplace_back("blob " + std::to_string(seed), make_problem(make_family(random_blob(seed)), ProblemKind::Steklov));
    cases.emplace_back("strip(1,2) SN", make_problem(make_family(FamilySpec::strip(1.0, 2.0)), ProblemKind::SN));
    cases.emplace_back("strip(1,1) SD", make_problem(make_family(FamilySpec::strip(1.0, 1.0)), ProblemKind::SD));
    for (const auto& [name, pr] : cases) {
        const AsymptoticsReport r = asymptotics_report(pr, 1, 24, resolving_params(pr, 25, 6));
        o.check(r.verdict.two_window, name);
        o.detail << name << ' ' << r.verdict.lower_window_max << " > " << r.verdict.upper_window_max << "; ";
    }
    const ShiftReport s = sn_sd_shift(make_family(FamilySpec::half_disk()), 10, 10, base_params(12, false));
    o.check(s.rows.front().residual < 1e-4, "half-disk shift at k = 10");
    o.detail << "half-disk shift k=10 " << s.rows.front().residual;
    return o;
}

BoundaryData random_fixture(std::mt19937_64& rng, ProblemKind kind) {
    const double units[] = {1.0, std::sqrt(2.0), std::sqrt(3.0)};
    std::uniform_int_distribution<int> count(0, 3), num(1, 9), den(1, 4), unit(0, 2);
    auto length = [&] { return static_cast<double>(num(rng)) / den(rng) * units[unit(rng)]; };
    BoundaryData d;
    const int n = count(rng);
    int m = count(rng);
    if (n + m == 0) m = 1;
    for (int i = 0; i < n; ++i) d.L_S.push_back(length());
    for (int i = 0; i < m; ++i) (kind == ProblemKind::SN ? d.L_N : d.L_D).push_back(length());
    d.normalize();
    return d;
}

// 8. inverse recovery
Outcome inverse_recovery() {
    Outcome o;
    std::mt19937_64 rng(2024);
    int correct = 0;
    for (int i = 0; i < 25; ++i) {
        const ProblemKind kind = i % 2 ? ProblemKind::SN : ProblemKind::SD;
        const BoundaryData d = random_fixture(rng, kind);
        const ExchangePair truth{d.L_S, kind == ProblemKind::SN ? d.L_N : d.L_D};
        const Recovery r = recover_boundary_data(model_spectrum(d, 200), kind);
        if (entry_exchange_equivalent(r.canonical, truth, 1e-9)) ++correct;
    }
    o.check(correct == 25, "recovery");
    o.detail << correct << "/25 recovered";

    int exact = 0;
    for (int i = 0; i < 10; ++i) {
        const ProblemKind kind = i % 2 ? ProblemKind::SN : ProblemKind::SD;
        std::uniform_int_distribution<int> num(1, 9);
        const double ell = num(rng) * std::sqrt(2.0), star = num(rng) / 2.0;
        const ExchangePair a{{ell, 1.5}, {star, star, 0.75}};
        const ExchangePair b = exchange(a, ell, star);
        auto spectrum = [&](const ExchangePair& e) {
            BoundaryData d;
            d.L_S = e.L_S;
            (kind == ProblemKind::SN ? d.L_N : d.L_D) = e.L_star;
            d.normalize();
            return model_spectrum(d, 400).values;
        };
        if (spectrum(a) == spectrum(b)) ++exact;
    }
    o.check(exact == 10, "exchange invariance");
    o.detail << "; " << exact << "/10 exchange pairs bitwise equal";
    return o;
}

// 9. multiplicity bound
Outcome multiplicity() {
    Outcome o;
    std::mt19937_64 rng(99);
    int models = 0, model_pass = 0;
    for (int i = 0; i < 25; ++i) {
        const BoundaryData d = random_fixture(rng, i % 2 ? ProblemKind::SN : ProblemKind::SD);
        const MultiplicityReport r = multiplicity_report(model_spectrum(d, 200), d, d.n() + d.m() + 2);
        ++models;
        if (r.passed) ++model_pass;
    }
    o.check(model_pass == models, "model spectra");
    o.detail << "models " << model_pass << "/" << models;

    int solved = 0, solved_pass = 0;
    for (const auto& [name, d] : corpus()) {
        for (ProblemKind kind : {ProblemKind::Steklov, ProblemKind::SN, ProblemKind::SD}) {
            if (kind != ProblemKind::Steklov && d.all_steklov()) continue;
            const MixedProblem pr = make_problem(d, kind);
            const BoundaryData data = boundary_data(pr.domain);
            const Spectrum s = solve_mixed_steklov(pr, resolving_params(pr, 30, 4)).spectrum;
            const MultiplicityReport r = multiplicity_report(s, data, data.n() + data.m() + 2);
            ++solved;
            if (r.passed) ++solved_pass;
            else o.check(false, name + " " + std::string(to_string(kind)));
        }
    }
    o.detail << "; solver spectra " << solved_pass << "/" << solved;
    return o;
}

// 10. dilation invariance of σ·L
Outcome scale_invariance() {
    Outcome o;
    double worst = 0.0;
    for (const auto& [name, d] : corpus()) {
        const ProblemKind kind = d.all_steklov() ? ProblemKind::Steklov : ProblemKind::DNMixed;
        const Spectrum base = solve(d, kind, 8);
        const double L = make_problem(d, kind).domain.steklov_length();
        for (double t : {0.5, 2.0}) {
            const PlanarDomain dt = dilate(d, t);
            const Spectrum s = solve(dt, kind, 8);
            const double Lt = make_problem(dt, kind).domain.steklov_length();
            for (std::size_t k = 0; k < 8; ++k) {
                const double a = base[k] * L, b = s[k] * Lt;
                // constant modes are zero up to rounding; compare those absolutely
                worst = std::max(worst, std::abs(a - b) / (std::abs(a) < 1e-6 ? 1.0 : std::abs(a)));
            }
        }
    }
    o.check(worst <= 1e-7, "relative drift");
    o.detail << "max relative drift " << worst;
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"model exactness", model_exactness},
        {"solver vs closed forms", solver_accuracy},
        {"doubling identity", doubling_identity},
        {"inequality suite", inequality_suite},
        {"sharpness trends", sharpness_trends},
        {"monotonicity", monotonicity},
        {"asymptotics", asymptotics},
        {"inverse recovery", inverse_recovery},
        {"multiplicity", multiplicity},
        {"scale invariance", scale_invariance},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        if (!o.pass) ++failures;
        std::printf("%s %zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.str().c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
