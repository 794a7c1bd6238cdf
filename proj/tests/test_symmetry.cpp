#include <doctest.h>

#include "steklov/errors.hpp"
#include "steklov/families.hpp"
#include "steklov/symmetry.hpp"

#include <cmath>
#include <numbers>

using namespace steklov;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

SolverParams params(std::size_t K) {
    SolverParams p;
    p.K = K;
    return p;
}
}  // namespace

TEST_CASE("quotients") {
    SUBCASE("disk across a diameter") {
        const MixedProblem q = quotient(make_family(FamilySpec::disk()), ReflectionAxis({0, 0}, {1, 0}), Condition::Neumann);
        CHECK(q.kind == ProblemKind::SN);
        const BoundaryData b = boundary_data(q.domain);
        REQUIRE(b.L_N.size() == 1);
        CHECK(b.L_N[0] == Approx(kPi).epsilon(1e-14));
        CHECK(q.domain.area() == Approx(kPi / 2.0).epsilon(1e-13));
    }
    SUBCASE("half-disk across its bisector") {
        const PlanarDomain h = make_family(FamilySpec::half_disk(1.0, Condition::Neumann));
        const MixedProblem q = quotient(h, ReflectionAxis({0, 0}, {0, 1}), Condition::Dirichlet);
        CHECK(q.kind == ProblemKind::DNMixed);
        const BoundaryData b = boundary_data(q.domain);
        REQUIRE(b.L_DN.size() == 1);
        CHECK(b.L_DN[0] == Approx(kPi / 2.0).epsilon(1e-14));
    }
    SUBCASE("asymmetric blob") {
        try {
            quotient(make_family(random_blob(4)), ReflectionAxis({0, 0}, {1, 0}), Condition::Neumann);
            FAIL("accepted");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NotSymmetric);
        }
    }
}

TEST_CASE("reflection split") {
    SUBCASE("disk") {
        const SplitReport r = reflection_split_check(make_family(FamilySpec::disk()), ReflectionAxis({0, 0}, {1, 0}), 7, params(7));
        const double expected[] = {0, 1, 1, 2, 2, 3, 3};
        for (int i = 0; i < 7; ++i) CHECK(std::abs(r.merged[i] - expected[i]) < 1e-6);
        CHECK(r.max_mismatch < 1e-6);
    }
    SUBCASE("gp_chain across its central axis") {
        const SplitReport r = reflection_split_check(make_family(FamilySpec::gp_chain(2, 0.1)), ReflectionAxis({0, 0}, {0, 1}), 8, params(8));
        CHECK(r.max_mismatch < 1e-4);
    }
    SUBCASE("symmetric blob") {
        const SplitReport r = reflection_split_check(make_family(random_blob(8, true)), ReflectionAxis({0, 0}, {1, 0}), 8, params(8));
        CHECK(r.max_mismatch < 1e-6);
        CHECK(r.error_budget > 0.0);
    }
}

TEST_CASE("dihedral chain") {
    SUBCASE("disk") {
        const PlanarDomain d = make_family(FamilySpec::disk());
        const DihedralReport r = dihedral_check(d, params(4));
        CHECK(r.sigma1_full == Approx(1.0).epsilon(1e-8));
        CHECK(r.sigma1_neumann == Approx(1.0).epsilon(1e-6));
        CHECK(r.sigma0_dirichlet == Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("square-symmetric blob") {
        const PlanarDomain d = make_family(FamilySpec::smooth_blob({1.0, 0.0, 0.0, 0.0, 0.1}, {}, 64));
        const DihedralReport r = dihedral_check(d, params(4));
        CHECK(r.max_relative_spread < 1e-5);
    }
    SUBCASE("rectangle") {
        std::vector<Arc> arcs = {Arc::segment({-2, -1}, {2, -1}, Condition::Steklov), Arc::segment({2, -1}, {2, 1}, Condition::Steklov),
                                 Arc::segment({2, 1}, {-2, 1}, Condition::Steklov), Arc::segment({-2, 1}, {-2, -1}, Condition::Steklov)};
        const PlanarDomain rect({Loop{arcs, LoopOrientation::Outer}});
        try {
            dihedral_check(rect, params(4));
            FAIL("accepted");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NotSymmetric);
        }
    }
}

TEST_CASE("split report JSON") {
    const SplitReport r = reflection_split_check(make_family(FamilySpec::disk()), ReflectionAxis({0, 0}, {1, 0}), 5, params(5));
    const nlohmann::json j = to_json(r);
    CHECK(j.contains("max_mismatch"));
    CHECK(j["merged"].size() == 5);
}
