#pragma once

#include "steklov/geometry.hpp"

#include <json.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace steklov {

enum class ProblemKind { Steklov, SN, SD, DNMixed };

std::string_view to_string(ProblemKind kind);
ProblemKind problem_kind_from_string(std::string_view s);

/// Nondecreasing eigenvalue sequence indexed from 0.
struct Spectrum {
    std::vector<double> values;
    ProblemKind kind = ProblemKind::Steklov;
    std::string source;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

Spectrum disk_spectrum(double length, std::size_t K);
/// Half-disk with Steklov half-circle of the given length; `c` is Neumann or Dirichlet on the diameter.
Spectrum half_disk_spectrum(double length, Condition c, std::size_t K);
/// Quarter-disk with Steklov quarter-circle of the given length. DNMixed: one Neumann and one
/// Dirichlet leg; SN / SD: both legs Neumann / Dirichlet.
Spectrum quarter_disk_spectrum(double length, std::size_t K, ProblemKind legs = ProblemKind::DNMixed);

/// Sorted multiset union truncated to K entries.
Spectrum merge(std::span<const Spectrum> spectra, std::size_t K);
Spectrum model_spectrum(const BoundaryData& data, std::size_t K);
ProblemKind model_kind(const BoundaryData& data);

/// A pair (L_S, L_*): circle lengths and interval lengths of a single type.
struct ExchangePair {
    std::vector<double> L_S;
    std::vector<double> L_star;

    friend bool operator==(const ExchangePair&, const ExchangePair&) = default;
};

/// Representative of the entry-exchange class: lexicographically smallest reachable pair
/// (L_S descending, then L_* descending).
ExchangePair canonicalize(const ExchangePair& pair);
bool entry_exchange_equivalent(const ExchangePair& a, const ExchangePair& b, double rel_tol = 0.0);
/// One exchange: ℓ in L_S becomes 2ℓ*, and two copies of ℓ* become two copies of ℓ/2.
ExchangePair exchange(const ExchangePair& pair, double ell, double ell_star);

struct Recovery {
    std::size_t n = 0;
    std::size_t m = 0;
    ExchangePair canonical;
    std::vector<double> generators;  // fitted progression steps, ascending
    std::vector<double> doubled;     // L_S ⊔ L_S ⊔ 2L_*, ascending
};

/// Greedy peeling of arithmetic progressions from an SN or SD spectrum tail.
Recovery recover_boundary_data(const Spectrum& tail, ProblemKind kind, double tolerance = 1e-9);

nlohmann::json to_json(const Spectrum& s);
Spectrum spectrum_from_json(const nlohmann::json& j);
std::string to_csv(const Spectrum& s);
nlohmann::json to_json(const ExchangePair& p);

}  // namespace steklov
