#pragma once

#include "steklov/dtn_solver.hpp"
#include "steklov/families.hpp"
#include "steklov/mesh.hpp"

#include <json.hpp>

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace steklov {

enum class BoundId {
    Weinstock,
    Hps,
    Genus0_8pik,
    ThmASharp,
    ThmAGenus0,
    Bandle,
    BandleLower,
    JohnFriedlander,
    ReflectedBandle,
};

std::string_view to_string(BoundId id);
BoundId bound_id_from_string(std::string_view s);

struct BoundSpec {
    BoundId id = BoundId::Weinstock;
    int k = 1;
    int p = 0;  // rotation order for the Bandle variants; 0 reads it from the domain

    /// Value of the bound; depends on (id, k) and on p for the Bandle ranges.
    double value() const;
    /// True when the bound is a lower bound (value must exceed it).
    bool lower() const { return id == BoundId::BandleLower; }
    std::string applicability() const;
};

struct BoundReport {
    BoundSpec spec;
    double value = 0.0;       // σ·L (or min{σ_k^N, σ_{k-1}^D}·L_S)
    double bound = 0.0;
    double margin = 0.0;      // bound - value, or value - bound for lower bounds
    double slack = 0.0;       // max(1e-6·bound, 10·error estimate of the value)
    bool satisfied = false;   // margin >= -slack
    double length = 0.0;      // the length used for normalization
    double error_estimate = 0.0;
    SolveDiagnostics diagnostics;
};

/// Problem kind a bound is evaluated on (Steklov for the closed-surface bounds).
ProblemKind bound_problem_kind(BoundId id);

BoundReport evaluate_bound(const MixedProblem& problem, const BoundSpec& spec, const SolverParams& params);

struct SweepRow {
    double parameter = 0.0;
    BoundReport report;
};

struct SweepTable {
    FamilySpec family;
    BoundSpec bound;
    std::vector<SweepRow> rows;
    bool monotone_toward_bound = false;  // |bound - value| strictly decreasing along the schedule
    bool all_satisfied = false;
};

SweepTable sweep_family(const FamilySpec& family, const std::vector<double>& schedule, const BoundSpec& bound,
                        const SolverParams& params);

enum class Ordering { Strict, Tie, Violated };
std::string_view to_string(Ordering o);

struct MonotonicityRow {
    std::size_t k = 0;
    double small = 0.0;
    double big = 0.0;
    Ordering ordering = Ordering::Tie;
};

struct MonotonicityReport {
    Condition kind = Condition::Neumann;
    double tolerance = 0.0;
    std::vector<MonotonicityRow> rows;
    bool passed = false;  // no ordering violated beyond tolerance
    bool all_strict = false;
};

/// Lemma-style domain monotonicity for a proper subdomain sharing the Steklov boundary:
/// Neumann values increase and Dirichlet values decrease with the domain. Indices k = 1..K.
MonotonicityReport monotonicity_check(const MixedProblem& small, const MixedProblem& big, Condition kind,
                                      std::size_t K, const SolverParams& params, double tolerance);

/// Parameter schedules for the extremal sweeps, keyed by family name.
std::map<std::string, std::vector<double>> load_schedule_manifest(const std::string& path);
std::map<std::string, std::vector<double>> default_schedules();

nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const SweepTable& t);
std::string to_csv(const SweepTable& t);
nlohmann::json to_json(const MonotonicityReport& r);

}  // namespace steklov
