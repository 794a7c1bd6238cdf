#include <doctest.h>

#include "steklov/errors.hpp"
#include "steklov/model_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

using namespace steklov;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

void check_values(const Spectrum& s, const std::vector<double>& expected, double tol = 1e-15) {
    REQUIRE(s.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(s[i] == Approx(expected[i]).epsilon(tol).scale(1.0));
}
}  // namespace

TEST_CASE("disk spectrum") {
    check_values(disk_spectrum(2.0 * kPi, 7), {0, 1, 1, 2, 2, 3, 3});
    check_values(disk_spectrum(1.0, 5), {0, 2 * kPi, 2 * kPi, 4 * kPi, 4 * kPi});
    check_values(disk_spectrum(3.7, 1), {0});
}

TEST_CASE("half-disk spectra") {
    check_values(half_disk_spectrum(kPi, Condition::Neumann, 4), {0, 1, 2, 3});
    check_values(half_disk_spectrum(kPi, Condition::Dirichlet, 3), {1, 2, 3});
    check_values(half_disk_spectrum(2.0 * kPi, Condition::Neumann, 3), {0, 0.5, 1});
}

TEST_CASE("quarter-disk spectra") {
    check_values(quarter_disk_spectrum(kPi / 2.0, 3), {1, 3, 5});
    check_values(quarter_disk_spectrum(kPi, 2), {0.5, 1.5});
    for (double lb : {0.3, 1.0, kPi, 5.5}) {
        const Spectrum parts[] = {quarter_disk_spectrum(lb, 60), half_disk_spectrum(lb, Condition::Dirichlet, 60)};
        const Spectrum merged = merge(parts, 60);
        const Spectrum half = half_disk_spectrum(2.0 * lb, Condition::Dirichlet, 60);
        for (std::size_t i = 0; i < 60; ++i) CHECK(merged[i] == Approx(half[i]).epsilon(1e-15));
    }
}

TEST_CASE("merge") {
    const Spectrum a = disk_spectrum(2.0 * kPi, 7), b = half_disk_spectrum(kPi, Condition::Dirichlet, 7);
    const Spectrum ab[] = {a, b}, ba[] = {b, a};
    check_values(merge(ab, 7), {0, 1, 1, 1, 2, 2, 2});
    CHECK(merge(ab, 7).values == merge(ba, 7).values);
    const Spectrum single[] = {a};
    CHECK(merge(single, 7).values == a.values);
}

TEST_CASE("model spectrum") {
    BoundaryData d;
    d.L_S = {2.0 * kPi};
    check_values(model_spectrum(d, 5), {0, 1, 1, 2, 2});
    d.L_D = {kPi};
    check_values(model_spectrum(d, 7), {0, 1, 1, 1, 2, 2, 2});

    BoundaryData n;
    n.L_N = {kPi};
    check_values(model_spectrum(n, 4), {0, 1, 2, 3});
    CHECK(model_kind(n) == ProblemKind::SN);

    try {
        model_spectrum(BoundaryData{}, 3);
        FAIL("empty data accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EmptySteklovBoundary);
    }
}

TEST_CASE("entry exchange") {
    const ExchangePair a{{4.0}, {3.0, 3.0}}, b{{6.0}, {2.0, 2.0}}, c{{4.0}, {3.0, 5.0}};
    CHECK(entry_exchange_equivalent(a, b));
    CHECK(entry_exchange_equivalent(a, a));
    CHECK_FALSE(entry_exchange_equivalent(c, b));
    CHECK(exchange(a, 4.0, 3.0).L_S == std::vector<double>{6.0});
    CHECK(canonicalize(exchange(a, 4.0, 3.0)) == canonicalize(b));
    CHECK(canonicalize(a) == canonicalize(b));

    // the exchanged pair has the same SD spectrum
    auto sd = [](const ExchangePair& p) {
        BoundaryData d;
        d.L_S = p.L_S;
        d.L_D = p.L_star;
        d.normalize();
        return model_spectrum(d, 300).values;
    };
    CHECK(sd(a) == sd(b));
}

TEST_CASE("recovery from a tail") {
    SUBCASE("disk") {
        BoundaryData d;
        d.L_S = {2.0 * kPi};
        const Recovery r = recover_boundary_data(model_spectrum(d, 200), ProblemKind::SN);
        CHECK(r.n == 1);
        CHECK(r.m == 0);
        REQUIRE(r.canonical.L_S.size() == 1);
        CHECK(r.canonical.L_S[0] == Approx(2.0 * kPi).epsilon(1e-9));
    }
    SUBCASE("half-disk SN") {
        BoundaryData d;
        d.L_N = {kPi};
        const Recovery r = recover_boundary_data(model_spectrum(d, 200), ProblemKind::SN);
        CHECK(r.n == 0);
        CHECK(r.m == 1);
    }
    SUBCASE("exchange-equivalent data give one class") {
        BoundaryData a, b;
        a.L_S = {4.0};
        a.L_D = {3.0, 3.0};
        b.L_S = {6.0};
        b.L_D = {2.0, 2.0};
        const Recovery ra = recover_boundary_data(model_spectrum(a, 200), ProblemKind::SD);
        const Recovery rb = recover_boundary_data(model_spectrum(b, 200), ProblemKind::SD);
        CHECK(entry_exchange_equivalent(ra.canonical, rb.canonical, 1e-9));
        CHECK(entry_exchange_equivalent(ra.canonical, ExchangePair{{4.0}, {3.0, 3.0}}, 1e-9));
    }
    SUBCASE("noise is rejected") {
        Spectrum s = half_disk_spectrum(kPi, Condition::Dirichlet, 100);
        s.kind = ProblemKind::SD;
        for (std::size_t i = 0; i < s.values.size(); i += 3) s.values[i] += 0.37;
        std::sort(s.values.begin(), s.values.end());
        CHECK_THROWS_AS(recover_boundary_data(s, ProblemKind::SD), Error);
    }
}

TEST_CASE("spectrum JSON and CSV") {
    const Spectrum s = quarter_disk_spectrum(kPi / 2.0, 4);
    const Spectrum back = spectrum_from_json(to_json(s));
    CHECK(back.values == s.values);
    CHECK(back.kind == s.kind);
    CHECK(to_csv(s).find("index,value") == 0);
}
