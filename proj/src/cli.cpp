#include "steklov/cli.hpp"

#include "steklov/asymptotics.hpp"
#include "steklov/domain_io.hpp"
#include "steklov/dtn_solver.hpp"
#include "steklov/errors.hpp"
#include "steklov/experiments.hpp"
#include "steklov/families.hpp"
#include "steklov/model_spectra.hpp"
#include "steklov/symmetry.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#ifndef STEKLOV_VERSION
#define STEKLOV_VERSION "0.0.0"
#endif

namespace steklov::cli {

std::string version() { return STEKLOV_VERSION; }

std::map<std::string, std::string> parse_config(std::istream& in) {
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorKind::InvalidArgument, "config line " + std::to_string(lineno) + ": expected key = value");
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

void apply_config(const std::map<std::string, std::string>& config, SolverParams& params) {
    for (const auto& [key, value] : config) {
        char* end = nullptr;
        const double v = std::strtod(value.c_str(), &end);
        const bool numeric = end && *end == '\0' && !value.empty();
        auto need = [&] {
            if (!numeric) fail(ErrorKind::InvalidArgument, "config key '" + key + "' needs a number");
        };
        if (key == "nodes_per_unit_length") need(), params.nodes_per_unit_length = v;
        else if (key == "grading") need(), params.grading = v;
        else if (key == "corner_cutoff") need(), params.corner_cutoff = v;
        else if (key == "eig_tol") need(), params.eig_tol = v;
        else if (key == "K") need(), params.K = static_cast<std::size_t>(v);
        else if (key == "panel_order") need(), params.panel_order = static_cast<int>(v);
        else if (key == "jobs") need(), params.jobs = static_cast<int>(v);
        else if (key == "multiply_connected") params.multiply_connected = value == "true" || value == "1";
        else if (key == "seed" || key == "estimate_error") continue;
        else fail(ErrorKind::InvalidArgument, "unknown config key '" + key + "'");
    }
    if (const auto it = config.find("estimate_error"); it != config.end())
        params.estimate_error = it->second == "true" || it->second == "1";
}

nlohmann::json round_numbers(const nlohmann::json& j, int digits) {
    if (j.is_number_float()) {
        const double v = j.get<double>();
        if (!std::isfinite(v)) return j;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*g", digits, v);
        return std::strtod(buf, nullptr);
    }
    if (j.is_array() || j.is_object()) {
        nlohmann::json out = j;
        for (auto it = out.begin(); it != out.end(); ++it) *it = round_numbers(*it, digits);
        return out;
    }
    return j;
}

namespace {

ProblemKind kind_from_flag(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (s == "steklov") return ProblemKind::Steklov;
    if (s == "sn") return ProblemKind::SN;
    if (s == "sd") return ProblemKind::SD;
    if (s == "mixed") return ProblemKind::DNMixed;
    fail(ErrorKind::InvalidArgument, "unknown kind '" + s + "' (steklov|sn|sd|mixed)");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

struct Context {
    std::ostream& out;
    std::ostream& err;
    SolverParams params;
    std::uint64_t seed = 1;
};

/// A file path, or a family description such as "gp_chain:k=2,eps=0.1" or "random_blob:seed=3".
PlanarDomain resolve_domain(const std::string& text, std::uint64_t seed) {
    if (std::filesystem::exists(text)) return load_domain(text);
    if (text.rfind("random_blob", 0) == 0) {
        bool symmetric = false;
        const auto colon = text.find(':');
        if (colon != std::string::npos) {
            for (const auto& kv : split(text.substr(colon + 1), ',')) {
                const auto eq = kv.find('=');
                const std::string key = kv.substr(0, eq), val = eq == std::string::npos ? "" : kv.substr(eq + 1);
                if (key == "seed") seed = std::stoull(val);
                else if (key == "symmetric") symmetric = val == "1" || val == "true";
                else fail(ErrorKind::InvalidArgument, "unknown random_blob key '" + key + "'");
            }
        }
        return make_family(random_blob(seed, symmetric));
    }
    return make_family(parse_family(text));
}

void emit(Context& ctx, const nlohmann::json& j) { ctx.out << round_numbers(j).dump(2) << '\n'; }

nlohmann::json diagnostics_json(const SolveDiagnostics& d) {
    return {{"asymmetry", d.asymmetry},
            {"condition", d.condition},
            {"max_residual", d.max_residual},
            {"nodes", d.nodes},
            {"steklov_nodes", d.steklov_nodes},
            {"symmetric_solve", d.symmetric_solve}};
}

struct SolverFlags {
    double nodes = 0.0;
    double grading = 0.0;
    double cutoff = -1.0;
    int jobs = 0;

    void add(CLI::App* app) {
        app->add_option("--nodes", nodes, "nodes per unit length (normalized frame)");
        app->add_option("--grading", grading, "grading exponent toward junctions");
        app->add_option("--cutoff", cutoff, "corner cutoff fraction in [0, 0.2]");
        app->add_option("--jobs", jobs, "worker threads");
    }
    SolverParams apply(SolverParams p, int root_jobs) const {
        if (nodes > 0.0) p.nodes_per_unit_length = nodes;
        if (grading > 0.0) p.grading = grading;
        if (cutoff >= 0.0) p.corner_cutoff = cutoff;
        if (root_jobs > 0) p.jobs = root_jobs;
        if (jobs > 0) p.jobs = jobs;
        return p;
    }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Steklov and mixed Steklov spectra of planar domains"};
    app.set_version_flag("--version", version());
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t seed = 1;
    int root_jobs = 0;
    app.add_option("--config", config_path, "key = value file mirroring the solver parameters");
    app.add_option("--seed", seed, "seed for randomized domains");
    app.add_option("--jobs", root_jobs, "worker threads");

    // solve
    auto* solve = app.add_subcommand("solve", "spectrum of a domain");
    std::string domain_arg, kind_arg = "steklov", format = "json";
    std::size_t k_count = 10;
    SolverFlags solve_flags;
    solve->add_option("--domain", domain_arg, "domain JSON file or family description")->required();
    solve->add_option("--kind", kind_arg, "steklov|sn|sd|mixed");
    solve->add_option("--k", k_count, "number of eigenvalues");
    solve->add_option("--out", format, "json|csv");
    solve_flags.add(solve);

    // check
    auto* check = app.add_subcommand("check", "evaluate an inequality on a domain");
    std::string bound_arg, check_domain, check_kind;
    int bound_k = 1, bound_p = 0;
    SolverFlags check_flags;
    check->add_option("--bound", bound_arg, "bound id")->required();
    check->add_option("--k", bound_k, "eigenvalue index");
    check->add_option("--p", bound_p, "rotation order for Bandle-type bounds");
    check->add_option("--domain", check_domain, "domain JSON file or family description")->required();
    check->add_option("--kind", check_kind, "override the problem kind");
    check_flags.add(check);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "evaluate a bound along a family schedule");
    std::string family_arg, sweep_bound, manifest, sweep_format = "json";
    std::vector<double> schedule;
    int sweep_k = 1, sweep_p = 0;
    SolverFlags sweep_flags;
    sweep->add_option("--family", family_arg, "family description, e.g. gp_chain:k=2")->required();
    sweep->add_option("--schedule", schedule, "comma separated parameter values")->delimiter(',');
    sweep->add_option("--bound", sweep_bound, "bound id")->required();
    sweep->add_option("--k", sweep_k, "eigenvalue index");
    sweep->add_option("--p", sweep_p, "rotation order for Bandle-type bounds");
    sweep->add_option("--manifest", manifest, "schedule manifest (JSON)");
    sweep->add_option("--out", sweep_format, "json|csv");
    sweep_flags.add(sweep);

    // split-check
    auto* split_cmd = app.add_subcommand("split-check", "reflection decomposition of a symmetric domain");
    std::string split_domain, axis_arg = "0,0,1,0";
    std::size_t split_k = 12;
    double split_tol = 0.0;
    bool dihedral = false;
    SolverFlags split_flags;
    split_cmd->add_option("--domain", split_domain, "domain JSON file or family description")->required();
    split_cmd->add_option("--axis", axis_arg, "px,py,dx,dy");
    split_cmd->add_option("--k", split_k, "number of eigenvalues");
    split_cmd->add_option("--tol", split_tol, "relative mismatch tolerance (default: 10x error estimates)");
    split_cmd->add_flag("--dihedral", dihedral, "run the dihedral eigenvalue chain instead");
    split_flags.add(split_cmd);

    // asymptotics
    auto* asym = app.add_subcommand("asymptotics", "residuals against the model spectrum");
    std::string asym_domain, asym_kind = "steklov", asym_format = "json";
    std::size_t kmin = 1, kmax = 20;
    bool shift = false;
    SolverFlags asym_flags;
    asym->add_option("--domain", asym_domain, "domain JSON file or family description")->required();
    asym->add_option("--kind", asym_kind, "steklov|sn|sd|mixed");
    asym->add_option("--kmin", kmin, "first index");
    asym->add_option("--kmax", kmax, "last index");
    asym->add_flag("--shift", shift, "report |σ_{k+m}^N - σ_k^D| instead");
    asym->add_option("--out", asym_format, "json|csv");
    asym_flags.add(asym);

    // recover
    auto* recover = app.add_subcommand("recover", "boundary data class from a spectrum tail");
    std::string spectrum_path, recover_kind = "sd";
    double recover_tol = 1e-9;
    recover->add_option("--spectrum", spectrum_path, "spectrum JSON file")->required();
    recover->add_option("--kind", recover_kind, "sn|sd");
    recover->add_option("--tol", recover_tol, "relative tolerance");

    // make-domain
    auto* make = app.add_subcommand("make-domain", "write a constructed domain as JSON");
    std::string make_family_name, make_out;
    FamilySpec overrides;
    bool symmetric_blob = false;
    auto* opt_k = make->add_option("--k", overrides.k, "chain length");
    auto* opt_p = make->add_option("--p", overrides.p, "rotation order");
    auto* opt_m = make->add_option("--m", overrides.m, "disks per arm");
    auto* opt_eps = make->add_option("--eps", overrides.eps, "overlap parameter");
    auto* opt_r = make->add_option("--radius", overrides.radius, "radius");
    auto* opt_w = make->add_option("--width", overrides.w, "strip width");
    auto* opt_h = make->add_option("--depth", overrides.h, "strip depth");
    make->add_option("--family", make_family_name, "family name or description")->required();
    make->add_flag("--symmetric", symmetric_blob, "random_blob without sine modes");
    make->add_option("--out", make_out, "output file (stdout when omitted)");

    // model-spectrum
    auto* model = app.add_subcommand("model-spectrum", "closed-form spectrum of boundary data");
    std::vector<double> ls, ld, ln, ldn;
    std::size_t model_k = 20;
    std::string model_format = "json";
    model->add_option("--LS", ls, "Steklov circle lengths")->delimiter(',');
    model->add_option("--LD", ld, "interval lengths with Dirichlet ends")->delimiter(',');
    model->add_option("--LN", ln, "interval lengths with Neumann ends")->delimiter(',');
    model->add_option("--LDN", ldn, "interval lengths with mixed ends")->delimiter(',');
    model->add_option("--K", model_k, "number of eigenvalues");
    model->add_option("--out", model_format, "json|csv");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::CallForVersion& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    Context ctx{out, err, {}, seed};
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) fail(ErrorKind::InvalidArgument, "cannot open config file " + config_path);
            const auto config = parse_config(in);
            apply_config(config, ctx.params);
            if (const auto it = config.find("seed"); it != config.end() && app.count("--seed") == 0)
                ctx.seed = std::stoull(it->second);
        }

        if (*solve) {
            SolverParams p = solve_flags.apply(ctx.params, root_jobs);
            p.K = k_count;
            const MixedProblem pr = make_problem(resolve_domain(domain_arg, ctx.seed), kind_from_flag(kind_arg));
            const EigenResult r = solve_mixed_steklov(pr, p);
            if (format == "csv") {
                out << std::setprecision(15) << "k,value,error_estimate\n";
                for (std::size_t k = 0; k < r.spectrum.size(); ++k)
                    out << k << ',' << r.spectrum[k] << ','
                        << (k < r.error_estimate.size() ? r.error_estimate[k] : 0.0) << '\n';
            } else if (format == "json") {
                emit(ctx, {{"problem_kind", to_string(pr.kind)},
                           {"spectrum", r.spectrum.values},
                           {"error_estimate", r.error_estimate},
                           {"diagnostics", diagnostics_json(r.diagnostics)}});
            } else {
                fail(ErrorKind::InvalidArgument, "unknown output format '" + format + "'");
            }
            return kOk;
        }
        if (*check) {
            SolverParams p = check_flags.apply(ctx.params, root_jobs);
            const BoundSpec spec{bound_id_from_string(bound_arg), bound_k, bound_p};
            const ProblemKind kind = check_kind.empty() ? bound_problem_kind(spec.id) : kind_from_flag(check_kind);
            const BoundReport r = evaluate_bound(make_problem(resolve_domain(check_domain, ctx.seed), kind), spec, p);
            emit(ctx, to_json(r));
            return r.satisfied ? kOk : kViolation;
        }
        if (*sweep) {
            SolverParams p = sweep_flags.apply(ctx.params, root_jobs);
            const FamilySpec family = parse_family(family_arg);
            if (schedule.empty()) {
                const auto table = manifest.empty() ? default_schedules() : load_schedule_manifest(manifest);
                const auto it = table.find(std::string(to_string(family.kind)));
                if (it == table.end()) fail(ErrorKind::InvalidArgument, "no schedule for this family");
                schedule = it->second;
            }
            const SweepTable t = sweep_family(family, schedule, {bound_id_from_string(sweep_bound), sweep_k, sweep_p}, p);
            if (sweep_format == "csv") out << to_csv(t);
            else emit(ctx, to_json(t));
            return t.all_satisfied ? kOk : kViolation;
        }
        if (*split_cmd) {
            SolverParams p = split_flags.apply(ctx.params, root_jobs);
            const PlanarDomain d = resolve_domain(split_domain, ctx.seed);
            if (dihedral) {
                const DihedralReport r = dihedral_check(d, p);
                emit(ctx, to_json(r));
                const double tol = split_tol > 0.0 ? split_tol : 1e-5;
                return r.max_relative_spread <= tol ? kOk : kViolation;
            }
            const auto parts = split(axis_arg, ',');
            if (parts.size() != 4) fail(ErrorKind::InvalidArgument, "--axis expects px,py,dx,dy");
            const ReflectionAxis axis({std::stod(parts[0]), std::stod(parts[1])},
                                      {std::stod(parts[2]), std::stod(parts[3])});
            const SplitReport r = reflection_split_check(d, axis, split_k, p);
            nlohmann::json j = to_json(r);
            const bool ok = split_tol > 0.0 ? r.max_mismatch <= split_tol : r.max_absolute <= 10.0 * r.error_budget;
            j["passed"] = ok;
            emit(ctx, j);
            return ok ? kOk : kViolation;
        }
        if (*asym) {
            SolverParams p = asym_flags.apply(ctx.params, root_jobs);
            const PlanarDomain d = resolve_domain(asym_domain, ctx.seed);
            std::vector<ResidualRow> rows;
            bool ok = false;
            nlohmann::json j;
            if (shift) {
                const ShiftReport r = sn_sd_shift(d, kmin, kmax, p);
                rows = r.rows;
                ok = r.verdict.two_window;
                j = to_json(r);
            } else {
                const AsymptoticsReport r = asymptotics_report(make_problem(d, kind_from_flag(asym_kind)), kmin, kmax, p);
                rows = r.rows;
                ok = r.verdict.two_window;
                j = to_json(r);
            }
            if (asym_format == "csv") out << residual_csv(rows);
            else emit(ctx, j);
            return ok ? kOk : kViolation;
        }
        if (*recover) {
            std::ifstream in(spectrum_path);
            if (!in) fail(ErrorKind::InvalidArgument, "cannot open spectrum file " + spectrum_path);
            nlohmann::json sj;
            try {
                in >> sj;
            } catch (const nlohmann::json::exception& e) {
                fail(ErrorKind::InvalidArgument, std::string("malformed spectrum file: ") + e.what());
            }
            const ProblemKind kind = kind_from_flag(recover_kind);
            const Recovery r = recover_boundary_data(spectrum_from_json(sj), kind, recover_tol);
            emit(ctx, {{"problem_kind", to_string(kind)},
                       {"n", r.n},
                       {"m", r.m},
                       {"canonical", to_json(r.canonical)},
                       {"generators", r.generators},
                       {"doubled", r.doubled}});
            return kOk;
        }
        if (*make) {
            FamilySpec spec;
            if (make_family_name.rfind("random_blob", 0) == 0) {
                spec = random_blob(ctx.seed, symmetric_blob);
            } else {
                spec = parse_family(make_family_name);
                if (opt_k->count()) spec.k = overrides.k;
                if (opt_p->count()) spec.p = overrides.p;
                if (opt_m->count()) spec.m = overrides.m;
                if (opt_eps->count()) spec.eps = overrides.eps;
                if (opt_r->count()) spec.radius = overrides.radius;
                if (opt_w->count()) spec.w = overrides.w;
                if (opt_h->count()) spec.h = overrides.h;
            }
            const PlanarDomain d = make_family(spec);
            if (make_out.empty()) emit(ctx, to_json(d));
            else save_domain(d, make_out);
            return kOk;
        }
        if (*model) {
            BoundaryData data{ls, ld, ln, ldn};
            data.normalize();
            const Spectrum s = model_spectrum(data, model_k);
            if (model_format == "csv") out << to_csv(s);
            else emit(ctx, to_json(s));
            return kOk;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return is_numerical(e.kind()) ? kNumericalFailure : kDomainError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDomainError;
    }
    return kUsage;
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace steklov::cli
