#include <doctest.h>

#include "steklov/domain_io.hpp"
#include "steklov/errors.hpp"
#include "steklov/families.hpp"
#include "steklov/geometry.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>

using namespace steklov;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::InvalidArgument;
}
}  // namespace

TEST_CASE("arc lengths") {
    CHECK(length(Arc::circle({0, 0}, 1.0, 0.0, kPi, true)) == Approx(kPi).epsilon(1e-15));
    CHECK(length(Arc::segment({0, 0}, {3, 4}, Condition::Neumann)) == Approx(5.0).epsilon(1e-15));
    CHECK(length(Arc::full_circle({1, 1}, 2.0)) == Approx(4.0 * kPi).epsilon(1e-15));
}

TEST_CASE("union of disks") {
    SUBCASE("single disk") {
        const Vec2 c[] = {{0, 0}};
        const double r[] = {1.0};
        const PlanarDomain d = union_of_disks(c, r);
        CHECK(d.simply_connected());
        REQUIRE(d.outer().arcs.size() == 1);
        CHECK(d.outer().arcs.front().is_full_circle());
        CHECK(d.boundary_length() == Approx(2.0 * kPi).epsilon(1e-14));
    }
    SUBCASE("two disks at distance 1") {
        const Vec2 c[] = {{0, 0}, {1, 0}};
        const double r[] = {1.0, 1.0};
        const PlanarDomain d = union_of_disks(c, r);
        CHECK(d.outer().arcs.size() == 2);
        CHECK(d.boundary_length() == Approx(8.0 * kPi / 3.0).epsilon(1e-13));
    }
    SUBCASE("disjoint disks") {
        const Vec2 c[] = {{0, 0}, {3, 0}};
        const double r[] = {1.0, 1.0};
        CHECK(kind_of([&] { union_of_disks(c, r); }) == ErrorKind::DisconnectedUnion);
    }
    SUBCASE("ring of disks encloses a hole") {
        std::vector<Vec2> c;
        std::vector<double> r(8, 0.6);
        for (int i = 0; i < 8; ++i) c.push_back(polar(1.5, 2.0 * kPi * i / 8));
        CHECK(kind_of([&] { union_of_disks(c, r); }) == ErrorKind::HoleDetected);
    }
}

TEST_CASE("boundary data") {
    SUBCASE("disk") {
        const BoundaryData b = boundary_data(make_family(FamilySpec::disk()));
        REQUIRE(b.L_S.size() == 1);
        CHECK(b.L_S[0] == Approx(2.0 * kPi).epsilon(1e-15));
        CHECK(b.n() == 1);
        CHECK(b.m() == 0);
    }
    SUBCASE("half-disk with Neumann diameter") {
        const BoundaryData b = boundary_data(make_family(FamilySpec::half_disk(1.0, Condition::Neumann)));
        CHECK(b.L_S.empty());
        REQUIRE(b.L_N.size() == 1);
        CHECK(b.L_N[0] == Approx(kPi).epsilon(1e-15));
        CHECK(b.m() == 1);
    }
    SUBCASE("quarter-disk with mixed legs") {
        const BoundaryData b = boundary_data(make_family(FamilySpec::quarter_disk()));
        REQUIRE(b.L_DN.size() == 1);
        CHECK(b.L_DN[0] == Approx(kPi / 2.0).epsilon(1e-15));
    }
    SUBCASE("Steklov arcs joined across the loop start") {
        std::vector<Arc> arcs = {Arc::segment({0, 0}, {1, 0}, Condition::Steklov), Arc::segment({1, 0}, {0, 1}, Condition::Neumann),
                                 Arc::segment({0, 1}, {0, 0}, Condition::Steklov)};
        const PlanarDomain d({Loop{arcs, LoopOrientation::Outer}});
        const BoundaryData b = boundary_data(d);
        REQUIRE(b.L_N.size() == 1);
        CHECK(b.L_N[0] == Approx(2.0));
    }
}

TEST_CASE("doubling across an axis") {
    SUBCASE("half-disk doubles to the disk") {
        const PlanarDomain h = make_family(FamilySpec::half_disk(1.0, Condition::Neumann));
        const PlanarDomain d = double_domain(h, ReflectionAxis({0, 0}, {1, 0}));
        const BoundaryData b = boundary_data(d);
        REQUIRE(b.L_S.size() == 1);
        CHECK(b.L_S[0] == Approx(2.0 * kPi).epsilon(1e-14));
        CHECK(b.m() == 0);
    }
    SUBCASE("quarter-disk doubles to a half-disk") {
        const PlanarDomain q = make_family(FamilySpec::quarter_disk(1.0, Condition::Neumann, Condition::Neumann));
        const PlanarDomain h = double_domain(q, ReflectionAxis({0, 0}, {0, 1}));
        const BoundaryData b = boundary_data(h);
        REQUIRE(b.L_N.size() == 1);
        CHECK(b.L_N[0] == Approx(kPi).epsilon(1e-14));
    }
    SUBCASE("tilted diameter is off the axis") {
        const PlanarDomain h = make_family(FamilySpec::half_disk());
        const double a = 10.0 * kPi / 180.0;
        CHECK(kind_of([&] { double_domain(h, ReflectionAxis({0, 0}, {std::cos(a), std::sin(a)})); }) ==
              ErrorKind::NotOnAxis);
    }
}

TEST_CASE("similarities") {
    const PlanarDomain d2 = dilate(make_family(FamilySpec::disk()), 2.0);
    CHECK(boundary_data(d2).L_S[0] == Approx(4.0 * kPi).epsilon(1e-15));

    const PlanarDomain gp = make_family(FamilySpec::gp_chain(2, 0.1));
    const PlanarDomain turned = transform(gp, Similarity::rotation(kPi / 2.0));
    const BoundaryData a = boundary_data(gp), b = boundary_data(turned);
    REQUIRE(a.L_S.size() == b.L_S.size());
    for (std::size_t i = 0; i < a.L_S.size(); ++i) CHECK(a.L_S[i] == Approx(b.L_S[i]).epsilon(1e-13));

    const PlanarDomain strip = make_family(FamilySpec::strip(1.0, 2.0));
    const BoundaryData s1 = boundary_data(strip), s3 = boundary_data(dilate(strip, 3.0));
    REQUIRE(s1.L_N.size() == 1);
    CHECK(s3.L_N[0] == Approx(3.0 * s1.L_N[0]).epsilon(1e-14));
}

TEST_CASE("domain JSON round trip") {
    const PlanarDomain d = make_family(FamilySpec::gp_chain(2, 0.1));
    const PlanarDomain back = domain_from_json(to_json(d));
    CHECK(back.arc_count() == d.arc_count());
    CHECK(back.boundary_length() == Approx(d.boundary_length()).epsilon(1e-14));
    CHECK(back.symmetry().reflections.size() == d.symmetry().reflections.size());

    const auto path = std::filesystem::temp_directory_path() / "steklov_roundtrip.json";
    save_domain(d, path.string());
    CHECK(load_domain(path.string()).area() == Approx(d.area()).epsilon(1e-14));
    std::filesystem::remove(path);

    CHECK_THROWS_AS(domain_from_json(nlohmann::json::parse(R"({"loops": 3})")), Error);
}
