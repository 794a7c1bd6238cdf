#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace steklov {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 unit(Vec2 a) { return (1.0 / norm(a)) * a; }
inline Vec2 polar(double r, double theta) { return {r * std::cos(theta), r * std::sin(theta)}; }
/// Counterclockwise rotation by 90 degrees.
inline Vec2 left_normal(Vec2 a) { return {-a.y, a.x}; }

enum class Condition { Steklov, Neumann, Dirichlet };

std::string_view to_string(Condition c);
Condition condition_from_string(std::string_view s);

/// Steklov density along an arc: a polynomial in the arc parameter t in [0, 1].
class WeightProfile {
public:
    WeightProfile() : coeffs_{1.0} {}
    explicit WeightProfile(std::vector<double> coeffs);

    double operator()(double t) const;
    WeightProfile reversed() const;
    /// Restriction to [ta, tb], reparametrised onto [0, 1].
    WeightProfile restricted(double ta, double tb) const;
    bool is_constant() const { return coeffs_.size() == 1; }
    const std::vector<double>& coefficients() const { return coeffs_; }
    double min_value() const;

    friend bool operator==(const WeightProfile&, const WeightProfile&) = default;

private:
    std::vector<double> coeffs_;
};

/// Similarity x -> scale * R(angle) * F * x + shift, with F = diag(1, -1) when reflect is set.
struct Similarity {
    double scale = 1.0;
    double angle = 0.0;
    bool reflect = false;
    Vec2 shift{};

    Vec2 apply(Vec2 p) const;
    Vec2 apply_vector(Vec2 v) const;
    /// Image of a polar angle measured about a mapped center.
    double apply_angle(double theta) const { return reflect ? angle - theta : angle + theta; }

    static Similarity identity() { return {}; }
    static Similarity translation(Vec2 by);
    static Similarity rotation(double angle, Vec2 about = {});
    static Similarity dilation(double factor, Vec2 about = {});
};

struct ReflectionAxis {
    Vec2 point{};
    Vec2 direction{1.0, 0.0};

    ReflectionAxis() = default;
    ReflectionAxis(Vec2 p, Vec2 d);

    Similarity as_similarity() const;
    Vec2 reflect(Vec2 p) const;
    /// Signed distance, positive on the left of the direction.
    double side(Vec2 p) const { return cross(direction, p - point); }
};

struct CircleGeom {
    Vec2 center;
    double radius = 1.0;
    double theta0 = 0.0;
    double sweep = 0.0;  // signed; positive means counterclockwise
};

struct SegmentGeom {
    Vec2 p0;
    Vec2 p1;
};

/// A boundary piece: circular arc or straight segment, traversed for t in [0, 1].
/// The outward normal is the tangent rotated clockwise (domain on the left).
class Arc {
public:
    static Arc circle(Vec2 center, double radius, double theta0, double theta1, bool ccw,
                      Condition c = Condition::Steklov, WeightProfile w = {});
    static Arc circle_sweep(Vec2 center, double radius, double theta0, double sweep,
                            Condition c = Condition::Steklov, WeightProfile w = {});
    static Arc full_circle(Vec2 center, double radius, Condition c = Condition::Steklov,
                           bool ccw = true, double theta0 = 0.0);
    static Arc segment(Vec2 p0, Vec2 p1, Condition c, WeightProfile w = {});

    bool is_circle() const { return std::holds_alternative<CircleGeom>(geom_); }
    bool is_segment() const { return !is_circle(); }
    const CircleGeom& circle_geom() const { return std::get<CircleGeom>(geom_); }
    const SegmentGeom& segment_geom() const { return std::get<SegmentGeom>(geom_); }

    Condition condition() const { return condition_; }
    bool is_steklov() const { return condition_ == Condition::Steklov; }
    const WeightProfile& weight() const { return weight_; }
    Arc with_condition(Condition c) const;
    Arc with_weight(WeightProfile w) const;

    double length() const;
    Vec2 point(double t) const;
    /// Unit tangent in the direction of traversal.
    Vec2 tangent(double t) const;
    Vec2 normal(double t) const;
    Vec2 start() const { return point(0.0); }
    Vec2 end() const { return point(1.0); }
    bool is_full_circle() const;
    /// +1/R for counterclockwise arcs, -1/R for clockwise arcs, 0 for segments.
    double signed_curvature() const;

    Arc reversed() const;
    /// Pointwise image; the traversal direction is carried along unchanged.
    Arc mapped(const Similarity& s) const;
    Arc sub(double ta, double tb) const;

    /// Parameter of the nearest point on the arc (clamped to [0, 1]).
    double closest_param(Vec2 p) const;
    double distance_to(Vec2 p) const;
    /// Parameter of p if p lies on the arc within tol.
    std::optional<double> param_of(Vec2 p, double tol) const;

private:
    Arc(std::variant<CircleGeom, SegmentGeom> g, Condition c, WeightProfile w);
    void validate() const;

    std::variant<CircleGeom, SegmentGeom> geom_;
    Condition condition_ = Condition::Steklov;
    WeightProfile weight_;
};

enum class LoopOrientation { Outer, Inner };

struct Loop {
    std::vector<Arc> arcs;
    LoopOrientation orientation = LoopOrientation::Outer;

    double length() const;
    /// Green's-theorem area; positive for counterclockwise loops.
    double signed_area() const;
    /// Winding number of the loop around p (p must not lie on the loop).
    int winding_number(Vec2 p) const;
};

struct RotationSymmetry {
    Vec2 center{};
    int order = 1;
};

struct SymmetryDescriptor {
    std::vector<ReflectionAxis> reflections;
    std::optional<RotationSymmetry> rotation;
};

/// Immutable planar domain: one outer loop (counterclockwise) and optional inner loops
/// (clockwise). Validation happens at construction.
class PlanarDomain {
public:
    explicit PlanarDomain(std::vector<Loop> loops, SymmetryDescriptor symmetry = {});

    const std::vector<Loop>& loops() const { return loops_; }
    const Loop& outer() const { return loops_.front(); }
    std::size_t boundary_components() const { return loops_.size(); }
    bool simply_connected() const { return loops_.size() == 1; }
    bool connected() const { return true; }
    const SymmetryDescriptor& symmetry() const { return symmetry_; }
    PlanarDomain with_symmetry(SymmetryDescriptor s) const;

    double diameter() const { return diameter_; }
    double boundary_length() const;
    double steklov_length() const;
    double area() const;
    bool all_steklov() const;
    bool contains(Vec2 p) const;
    std::size_t arc_count() const;

private:
    void validate() const;

    std::vector<Loop> loops_;
    SymmetryDescriptor symmetry_;
    double diameter_ = 0.0;
};

enum class IntervalType { D, N, DN };

struct SteklovComponent {
    std::size_t loop = 0;
    std::size_t first_arc = 0;
    std::size_t arc_count = 0;
    bool is_circle = false;
    IntervalType type = IntervalType::N;  // meaningful for intervals only
    double length = 0.0;
};

struct BoundaryData {
    std::vector<double> L_S;
    std::vector<double> L_D;
    std::vector<double> L_N;
    std::vector<double> L_DN;

    std::size_t n() const { return L_S.size(); }
    std::size_t m() const { return L_D.size() + L_N.size() + L_DN.size(); }
    bool empty() const { return n() + m() == 0; }
    /// Sorts every multiset ascending and checks positivity.
    void normalize();
    friend bool operator==(const BoundaryData&, const BoundaryData&) = default;
};

// --- operations -----------------------------------------------------------

double length(const Arc& arc);

std::vector<SteklovComponent> steklov_components(const PlanarDomain& domain);
BoundaryData boundary_data(const PlanarDomain& domain);

/// Image under a similarity; orientation is restored when the map reflects.
PlanarDomain transform(const PlanarDomain& domain, const Similarity& s);
PlanarDomain dilate(const PlanarDomain& domain, double t);

/// Doubling across the non-Steklov segments lying on the axis.
PlanarDomain double_domain(const PlanarDomain& domain, const ReflectionAxis& axis);

/// Reflection symmetry test by sampling mirrored arcs against the boundary.
bool has_reflection_symmetry(const PlanarDomain& domain, const ReflectionAxis& axis, double tol = 1e-9);
bool has_rotation_symmetry(const PlanarDomain& domain, Vec2 center, int order, double tol = 1e-9);

/// Convex building blocks for unions.
struct DiskShape {
    Vec2 center;
    double radius = 1.0;
};
struct HalfDiskShape {
    Vec2 center;
    double radius = 1.0;
    double direction = 0.0;  // polar angle of the bulge
};
struct PolygonShape {
    std::vector<Vec2> vertices;  // convex, counterclockwise
};
using Shape = std::variant<DiskShape, HalfDiskShape, PolygonShape>;

/// Boundary of a union of convex shapes; every boundary arc gets the given condition.
PlanarDomain union_of_shapes(std::span<const Shape> shapes, Condition c = Condition::Steklov);
PlanarDomain union_of_disks(std::span<const Vec2> centers, std::span<const double> radii);

/// Arc sequences that are the same circle or the same line with equal data are fused.
std::vector<Arc> merge_arcs(std::vector<Arc> arcs, bool cyclic);

// intersect.cpp
std::vector<Vec2> intersect(const Arc& a, const Arc& b, double tol);

}  // namespace steklov
