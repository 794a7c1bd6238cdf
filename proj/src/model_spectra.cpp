#include "steklov/model_spectra.hpp"

#include "steklov/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <iomanip>
#include <numbers>
#include <set>
#include <sstream>

namespace steklov {

namespace {

constexpr double kPi = std::numbers::pi;

void check_length(double l) {
    if (!(l > 0.0) || !std::isfinite(l)) fail(ErrorKind::InvalidArgument, "lengths must be positive and finite");
}

std::vector<double> sorted_desc(std::vector<double> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

ExchangePair normalized(ExchangePair p) {
    p.L_S = sorted_desc(std::move(p.L_S));
    p.L_star = sorted_desc(std::move(p.L_star));
    return p;
}

bool lex_less(const ExchangePair& a, const ExchangePair& b) {
    if (a.L_S != b.L_S) return std::lexicographical_compare(a.L_S.begin(), a.L_S.end(), b.L_S.begin(), b.L_S.end());
    return std::lexicographical_compare(a.L_star.begin(), a.L_star.end(), b.L_star.begin(), b.L_star.end());
}

/// Entries closer than rel_tol are replaced by their common mean.
std::vector<double> snap(std::vector<double> v, double rel_tol) {
    std::sort(v.begin(), v.end());
    std::size_t i = 0;
    while (i < v.size()) {
        std::size_t j = i + 1;
        double sum = v[i];
        while (j < v.size() && v[j] - v[i] <= rel_tol * v[j]) sum += v[j++];
        for (std::size_t k = i; k < j; ++k) v[k] = sum / static_cast<double>(j - i);
        i = j;
    }
    return v;
}

}  // namespace

std::string_view to_string(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::Steklov: return "Steklov";
        case ProblemKind::SN: return "SN";
        case ProblemKind::SD: return "SD";
        case ProblemKind::DNMixed: return "DN-mixed";
    }
    return "?";
}

ProblemKind problem_kind_from_string(std::string_view s) {
    if (s == "Steklov" || s == "steklov") return ProblemKind::Steklov;
    if (s == "SN" || s == "sn") return ProblemKind::SN;
    if (s == "SD" || s == "sd") return ProblemKind::SD;
    if (s == "DN-mixed" || s == "mixed" || s == "dn") return ProblemKind::DNMixed;
    fail(ErrorKind::InvalidArgument, "unknown problem kind '" + std::string(s) + "'");
}

Spectrum disk_spectrum(double length, std::size_t K) {
    check_length(length);
    Spectrum s{{}, ProblemKind::Steklov, "disk"};
    s.values.reserve(K);
    for (std::size_t i = 0; i < K; ++i) {
        const double j = static_cast<double>((i + 1) / 2);
        s.values.push_back(2.0 * (kPi * j) / length);
    }
    return s;
}

Spectrum half_disk_spectrum(double length, Condition c, std::size_t K) {
    check_length(length);
    if (c == Condition::Steklov) fail(ErrorKind::InvalidArgument, "half-disk diameter must be Neumann or Dirichlet");
    const bool neumann = c == Condition::Neumann;
    Spectrum s{{}, neumann ? ProblemKind::SN : ProblemKind::SD, neumann ? "half-disk SN" : "half-disk SD"};
    for (std::size_t i = 0; i < K; ++i) {
        const double j = static_cast<double>(neumann ? i : i + 1);
        s.values.push_back((kPi * j) / length);
    }
    return s;
}

Spectrum quarter_disk_spectrum(double length, std::size_t K, ProblemKind legs) {
    check_length(length);
    if (legs == ProblemKind::Steklov) fail(ErrorKind::InvalidArgument, "quarter-disk legs must be N, D or mixed");
    if (legs != ProblemKind::DNMixed) {
        Spectrum s = half_disk_spectrum(length, legs == ProblemKind::SN ? Condition::Neumann : Condition::Dirichlet, K);
        s.source = legs == ProblemKind::SN ? "quarter-disk SN" : "quarter-disk SD";
        return s;
    }
    Spectrum s{{}, ProblemKind::DNMixed, "quarter-disk DN"};
    for (std::size_t i = 0; i < K; ++i) s.values.push_back((kPi * static_cast<double>(2 * i + 1)) / (2.0 * length));
    return s;
}

Spectrum merge(std::span<const Spectrum> spectra, std::size_t K) {
    Spectrum out;
    if (spectra.empty()) return out;
    out.kind = spectra.front().kind;
    for (const auto& s : spectra) {
        out.values.insert(out.values.end(), s.values.begin(), s.values.end());
        if (s.kind != out.kind) out.kind = ProblemKind::DNMixed;
        out.source += (out.source.empty() ? "" : " + ") + s.source;
    }
    std::stable_sort(out.values.begin(), out.values.end());
    if (out.values.size() > K) out.values.resize(K);
    return out;
}

ProblemKind model_kind(const BoundaryData& d) {
    if (!d.L_DN.empty() || (!d.L_D.empty() && !d.L_N.empty())) return ProblemKind::DNMixed;
    if (!d.L_D.empty()) return ProblemKind::SD;
    if (!d.L_N.empty()) return ProblemKind::SN;
    return ProblemKind::Steklov;
}

Spectrum model_spectrum(const BoundaryData& data, std::size_t K) {
    if (data.empty()) fail(ErrorKind::EmptySteklovBoundary, "boundary data has no Steklov components");
    std::vector<Spectrum> parts;
    for (double l : data.L_S) parts.push_back(disk_spectrum(l, K));
    for (double l : data.L_N) parts.push_back(half_disk_spectrum(l, Condition::Neumann, K));
    for (double l : data.L_D) parts.push_back(half_disk_spectrum(l, Condition::Dirichlet, K));
    for (double l : data.L_DN) parts.push_back(quarter_disk_spectrum(l, K));
    Spectrum s = merge(parts, K);
    s.kind = model_kind(data);
    s.source = "model";
    return s;
}

ExchangePair exchange(const ExchangePair& pair, double ell, double ell_star) {
    ExchangePair p = pair;
    auto it = std::find(p.L_S.begin(), p.L_S.end(), ell);
    if (it == p.L_S.end()) fail(ErrorKind::InvalidArgument, "exchange: length not in L_S");
    if (std::count(p.L_star.begin(), p.L_star.end(), ell_star) < 2)
        fail(ErrorKind::InvalidArgument, "exchange: needs two copies of the interval length");
    *it = 2.0 * ell_star;
    for (int c = 0; c < 2; ++c) *std::find(p.L_star.begin(), p.L_star.end(), ell_star) = ell / 2.0;
    return normalized(std::move(p));
}

ExchangePair canonicalize(const ExchangePair& pair) {
    for (double l : pair.L_S) check_length(l);
    for (double l : pair.L_star) check_length(l);
    const ExchangePair start = normalized(pair);
    auto key = [](const ExchangePair& p) {
        std::vector<double> k = p.L_S;
        k.push_back(-1.0);
        k.insert(k.end(), p.L_star.begin(), p.L_star.end());
        return k;
    };
    std::set<std::vector<double>> seen{key(start)};
    std::deque<ExchangePair> queue{start};
    ExchangePair best = start;
    constexpr std::size_t kMaxStates = 200000;
    while (!queue.empty()) {
        const ExchangePair cur = std::move(queue.front());
        queue.pop_front();
        if (lex_less(cur, best)) best = cur;
        std::vector<double> ls = cur.L_S;
        ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
        std::vector<double> doubles;
        for (std::size_t i = 0; i + 1 < cur.L_star.size(); ++i)
            if (cur.L_star[i] == cur.L_star[i + 1] && (doubles.empty() || doubles.back() != cur.L_star[i]))
                doubles.push_back(cur.L_star[i]);
        for (double l : ls)
            for (double ls_star : doubles) {
                ExchangePair next = exchange(cur, l, ls_star);
                if (seen.insert(key(next)).second) {
                    if (seen.size() > kMaxStates)
                        fail(ErrorKind::InvalidArgument, "entry-exchange class too large to enumerate");
                    queue.push_back(std::move(next));
                }
            }
    }
    return best;
}

bool entry_exchange_equivalent(const ExchangePair& a, const ExchangePair& b, double rel_tol) {
    if (a.L_S.size() != b.L_S.size() || a.L_star.size() != b.L_star.size()) return false;
    auto prep = [&](const ExchangePair& p) {
        return canonicalize({snap(p.L_S, rel_tol), snap(p.L_star, rel_tol)});
    };
    const ExchangePair ca = prep(a), cb = prep(b);
    auto close = [&](const std::vector<double>& x, const std::vector<double>& y) {
        for (std::size_t i = 0; i < x.size(); ++i)
            if (std::abs(x[i] - y[i]) > rel_tol * std::max(x[i], y[i])) return false;
        return true;
    };
    return close(ca.L_S, cb.L_S) && close(ca.L_star, cb.L_star);
}

Recovery recover_boundary_data(const Spectrum& tail, ProblemKind kind, double tolerance) {
    if (kind != ProblemKind::SN && kind != ProblemKind::SD)
        fail(ErrorKind::InvalidArgument, "recovery needs an SN or SD spectrum");
    if (!(tolerance > 0.0)) fail(ErrorKind::InvalidArgument, "recovery tolerance must be positive");
    if (tail.values.empty()) fail(ErrorKind::RecoveryFailed, "empty spectrum");
    std::vector<double> v = tail.values;
    std::sort(v.begin(), v.end());
    const double top = v.back();
    if (!(top > 0.0)) fail(ErrorKind::RecoveryFailed, "spectrum has no positive entries");
    const double zero_tol = tolerance * top;
    const double cutoff = top * (1.0 - 10.0 * tolerance);

    std::size_t zeros = 0;
    std::multiset<double> pool;
    for (double x : v) {
        if (std::abs(x) <= zero_tol)
            ++zeros;
        else if (x < 0.0)
            fail(ErrorKind::RecoveryFailed, "negative eigenvalue in tail");
        else if (x < cutoff)
            pool.insert(x);
    }

    auto take = [&](double target) -> std::optional<double> {
        auto it = pool.lower_bound(target);
        std::multiset<double>::iterator best = pool.end();
        double err = std::numeric_limits<double>::infinity();
        for (auto cand : {it, it == pool.begin() ? pool.end() : std::prev(it)}) {
            if (cand == pool.end()) continue;
            const double e = std::abs(*cand - target);
            if (e < err) {
                err = e;
                best = cand;
            }
        }
        if (best == pool.end() || err > tolerance * target) return std::nullopt;
        const double x = *best;
        pool.erase(best);
        return x;
    };

    Recovery r;
    while (!pool.empty()) {
        double g = *pool.begin();
        pool.erase(pool.begin());
        double sjv = g, sjj = 1.0;
        std::size_t terms = 1;
        for (int j = 2;; ++j) {
            const double target = g * j;
            if (target >= cutoff * (1.0 - tolerance)) break;
            const auto x = take(target);
            if (!x) {
                if (target < cutoff * (1.0 - 2.0 * tolerance))
                    fail(ErrorKind::RecoveryFailed, "progression with step " + std::to_string(g) +
                                                        " has no term near " + std::to_string(target));
                break;
            }
            sjv += j * *x;
            sjj += static_cast<double>(j) * j;
            g = sjv / sjj;
            ++terms;
        }
        if (terms < 3)
            fail(ErrorKind::AmbiguousTail, "progression with step " + std::to_string(g) +
                                               " has fewer than three terms below the cutoff; extend the tail");
        r.generators.push_back(g);
    }
    std::sort(r.generators.begin(), r.generators.end());
    for (double g : r.generators) r.doubled.push_back(2.0 * kPi / g);
    r.doubled = snap(std::move(r.doubled), 100.0 * tolerance);

    const std::size_t total = r.doubled.size();
    if (kind == ProblemKind::SD) {
        if (2 * zeros > total) fail(ErrorKind::RecoveryFailed, "zero count inconsistent with the progressions");
        r.n = zeros;
        r.m = total - 2 * zeros;
    } else {
        if (zeros > total || 2 * zeros < total)
            fail(ErrorKind::RecoveryFailed, "zero count inconsistent with the progressions");
        r.n = total - zeros;
        r.m = 2 * zeros - total;
    }

    // split M into L_S ⊔ L_S ⊔ 2L_*: take circles from the largest paired entries
    std::vector<double> rest = r.doubled;
    ExchangePair pair;
    for (std::size_t c = 0; c < r.n; ++c) {
        bool found = false;
        for (std::size_t i = rest.size(); i-- > 1;) {
            if (rest[i] == rest[i - 1]) {
                pair.L_S.push_back(rest[i]);
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i - 1), rest.begin() + static_cast<std::ptrdiff_t>(i + 1));
                found = true;
                break;
            }
        }
        if (!found) fail(ErrorKind::RecoveryFailed, "circle progressions do not come in pairs");
    }
    for (double x : rest) pair.L_star.push_back(x / 2.0);
    r.canonical = canonicalize(pair);
    return r;
}

nlohmann::json to_json(const Spectrum& s) {
    return {{"problem_kind", std::string(to_string(s.kind))}, {"index_origin", 0}, {"source", s.source}, {"values", s.values}};
}

Spectrum spectrum_from_json(const nlohmann::json& j) {
    Spectrum s;
    try {
        if (j.is_array()) {
            s.values = j.get<std::vector<double>>();
        } else {
            const auto& vals = j.contains("values") ? j["values"] : j.at("spectrum");
            s.values = vals.get<std::vector<double>>();
            if (j.contains("problem_kind")) s.kind = problem_kind_from_string(j["problem_kind"].get<std::string>());
            s.source = j.value("source", std::string());
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::InvalidArgument, std::string("malformed spectrum JSON: ") + e.what());
    }
    std::sort(s.values.begin(), s.values.end());
    return s;
}

std::string to_csv(const Spectrum& s) {
    std::ostringstream os;
    os << std::setprecision(15) << "index,value\n";
    for (std::size_t i = 0; i < s.values.size(); ++i) os << i << ',' << s.values[i] << '\n';
    return os.str();
}

nlohmann::json to_json(const ExchangePair& p) { return {{"L_S", p.L_S}, {"L_star", p.L_star}}; }

}  // namespace steklov
