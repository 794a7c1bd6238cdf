#include <doctest.h>

#include "steklov/dtn_solver.hpp"
#include "steklov/errors.hpp"
#include "steklov/families.hpp"

#include <cmath>
#include <numbers>

using namespace steklov;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

SolverParams params(std::size_t K, bool estimate = false) {
    SolverParams p;
    p.K = K;
    p.estimate_error = estimate;
    return p;
}
}  // namespace

TEST_CASE("disk mesh is uniform") {
    const MixedProblem pr = make_problem(make_family(FamilySpec::disk()), ProblemKind::Steklov);
    SolverParams p = params(4);
    p.nodes_per_unit_length = 64.0 / (2.0 * kPi * 0.85) * (1.0 - 1e-12);
    const Mesh m = discretize(pr, p);
    REQUIRE(m.nodes.size() == 64);
    for (const auto& n : m.nodes) CHECK(n.weight == Approx(2.0 * kPi / 64.0).epsilon(1e-14));
    CHECK(norm(m.nodes[1].x - m.nodes[0].x) == Approx(norm(m.nodes[33].x - m.nodes[32].x)).epsilon(1e-13));
}

TEST_CASE("strip mesh grades every corner") {
    const MixedProblem pr = make_problem(make_family(FamilySpec::strip(1.0, 2.0)), ProblemKind::SN);
    const Mesh m = discretize(pr, params(4));
    CHECK(m.arcs.size() == 4);
    CHECK(m.junctions.size() == 4);
    for (const auto& panel : m.panels) CHECK((panel.map.start && panel.map.end));
}

TEST_CASE("too few nodes") {
    const MixedProblem pr = make_problem(make_family(FamilySpec::disk()), ProblemKind::Steklov);
    SolverParams p = params(100);
    p.nodes_per_unit_length = 10.0;
    try {
        discretize(pr, p);
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TooFewNodes);
    }
}

TEST_CASE("Dirichlet-to-Neumann map on the disk") {
    const MixedProblem pr = make_problem(make_family(FamilySpec::disk()), ProblemKind::Steklov);
    SolverParams p = params(8);
    p.nodes_per_unit_length = 256.0 / (2.0 * kPi * 0.85) * (1.0 - 1e-12);
    const Mesh m = discretize(pr, p);
    REQUIRE(m.nodes.size() == 256);
    const DtnOperator op = assemble_dtn(pr, m);
    for (int k = 0; k <= 8; ++k) {
        Eigen::VectorXd f(256);
        for (std::size_t i = 0; i < 256; ++i) f[i] = std::cos(k * std::atan2(m.nodes[i].x.y, m.nodes[i].x.x));
        const Eigen::VectorXd g = op.lambda * f;
        CHECK((g - k * f).cwiseAbs().maxCoeff() < 1e-8);
    }
    CHECK((op.lambda * Eigen::VectorXd::Ones(256)).norm() / op.lambda.norm() < 1e-8);
}

TEST_CASE("weighted symmetry on a smooth blob") {
    const MixedProblem pr = make_problem(make_family(random_blob(3)), ProblemKind::Steklov);
    const DtnOperator op = assemble_dtn(pr, discretize(pr, params(8)));
    CHECK(op.condition < 1e13);
    CHECK((op.lambda * Eigen::VectorXd::Ones(op.lambda.rows())).norm() / op.lambda.norm() < 1e-8);
}

TEST_CASE("spectra against closed forms") {
    SUBCASE("disk") {
        const EigenResult r = solve_mixed_steklov(make_problem(make_family(FamilySpec::disk()), ProblemKind::Steklov), params(7, true));
        const double expected[] = {0, 1, 1, 2, 2, 3, 3};
        for (int i = 0; i < 7; ++i) CHECK(std::abs(r.spectrum[i] - expected[i]) < 1e-8);
        CHECK(r.diagnostics.symmetric_solve);
        REQUIRE(r.error_estimate.size() == 7);
        CHECK(max_error_estimate(r) < 1e-8);
    }
    SUBCASE("half-disk SN and SD") {
        const Spectrum n = solve_mixed_steklov(make_problem(make_family(FamilySpec::half_disk()), ProblemKind::SN), params(4)).spectrum;
        const Spectrum d = solve_mixed_steklov(make_problem(make_family(FamilySpec::half_disk()), ProblemKind::SD), params(4)).spectrum;
        for (int i = 0; i < 4; ++i) {
            CHECK(std::abs(n[i] - i) < 1e-4);
            CHECK(std::abs(d[i] - (i + 1)) < 1e-4);
        }
    }
    SUBCASE("quarter-disk DN") {
        const Spectrum s = solve_mixed_steklov(make_problem(make_family(FamilySpec::quarter_disk()), ProblemKind::DNMixed), params(4)).spectrum;
        for (int i = 0; i < 4; ++i) CHECK(std::abs(s[i] - (2 * i + 1)) < 1e-4);
    }
    SUBCASE("strip(1,2) SN") {
        const Spectrum s = solve_mixed_steklov(make_problem(make_family(FamilySpec::strip(1.0, 2.0)), ProblemKind::SN), params(2)).spectrum;
        CHECK(std::abs(s[1] - kPi * std::tanh(2.0 * kPi)) < 1e-6);
    }
}

TEST_CASE("mass-orthonormal traces") {
    const EigenResult r = solve_mixed_steklov(make_problem(make_family(FamilySpec::half_disk()), ProblemKind::SD), params(5));
    REQUIRE(r.traces.cols() == 5);
    const DtnOperator op = assemble_dtn(make_problem(make_family(FamilySpec::half_disk()), ProblemKind::SD), r.mesh);
    const Eigen::MatrixXd G = r.traces.transpose() * op.mass.asDiagonal() * r.traces;
    CHECK((G - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("convergence study") {
    SUBCASE("disk converges fast") {
        const MixedProblem pr = make_problem(make_family(FamilySpec::disk()), ProblemKind::Steklov);
        const double per = 1.0 / (2.0 * kPi * 0.85) * (1.0 - 1e-12);
        const auto rows = convergence_study(pr, {32 * per, 64 * per, 128 * per}, 3, params(3), {0, 1, 1});
        REQUIRE(rows.size() == 3);
        CHECK(rows[1].errors[1] < 1e-6);
        CHECK(rows[2].errors[1] < 1e-12);
    }
    SUBCASE("half-disk order at least two") {
        const MixedProblem pr = make_problem(make_family(FamilySpec::half_disk()), ProblemKind::SN);
        const auto rows = convergence_study(pr, {8, 12, 18}, 3, params(3), {0, 1, 2});
        REQUIRE(rows.size() == 3);
        CHECK(rows[2].errors[1] < rows[0].errors[1]);
        CHECK(std::isnan(rows[0].order[1]));
    }
    SUBCASE("repeated levels are rejected") {
        const MixedProblem pr = make_problem(make_family(FamilySpec::disk()), ProblemKind::Steklov);
        CHECK_THROWS_AS(convergence_study(pr, {30, 30}, 3, params(3)), Error);
    }
}

TEST_CASE("parameter validation") {
    const MixedProblem pr = make_problem(make_family(FamilySpec::disk()), ProblemKind::Steklov);
    SolverParams p = params(3);
    p.corner_cutoff = 0.5;
    CHECK_THROWS_AS(solve_mixed_steklov(pr, p), Error);
    p = params(3);
    p.grading = 0.5;
    CHECK_THROWS_AS(solve_mixed_steklov(pr, p), Error);
}

TEST_CASE("multiply connected domains are opt-in") {
    std::vector<Loop> loops;
    loops.push_back(Loop{{Arc::full_circle({0, 0}, 2.0)}, LoopOrientation::Outer});
    loops.push_back(Loop{{Arc::full_circle({0, 0}, 1.0).reversed()}, LoopOrientation::Inner});
    const PlanarDomain annulus(loops);
    const MixedProblem pr = make_problem(annulus, ProblemKind::Steklov);
    try {
        solve_mixed_steklov(pr, params(3));
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnsupportedTopology);
    }
}
