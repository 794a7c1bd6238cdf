#include "steklov/families.hpp"

#include "steklov/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace steklov {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const std::string& what) {
    if (!ok) fail(ErrorKind::ParameterOutOfRange, what);
}

SymmetryDescriptor dihedral(int p, Vec2 center = {}) {
    SymmetryDescriptor s;
    for (int j = 0; j < p; ++j) s.reflections.emplace_back(center, polar(1.0, kPi * j / p));
    s.rotation = RotationSymmetry{center, p};
    return s;
}

PlanarDomain disk_domain(double r) {
    require(r > 0.0, "disk radius must be positive");
    SymmetryDescriptor s;
    s.reflections.emplace_back(Vec2{}, Vec2{1.0, 0.0});
    s.reflections.emplace_back(Vec2{}, Vec2{0.0, 1.0});
    s.rotation = RotationSymmetry{{}, 4};
    return PlanarDomain({Loop{{Arc::full_circle({}, r)}, LoopOrientation::Outer}}, s);
}

PlanarDomain half_disk_domain(double r, Condition diameter) {
    require(r > 0.0, "half-disk radius must be positive");
    std::vector<Arc> arcs{Arc::circle_sweep({}, r, 0.0, kPi), Arc::segment({-r, 0.0}, {r, 0.0}, diameter)};
    SymmetryDescriptor s;
    s.reflections.emplace_back(Vec2{}, Vec2{0.0, 1.0});
    return PlanarDomain({Loop{std::move(arcs), LoopOrientation::Outer}}, s);
}

PlanarDomain quarter_disk_domain(double r, Condition leg_x, Condition leg_y) {
    require(r > 0.0, "quarter-disk radius must be positive");
    std::vector<Arc> arcs{Arc::circle_sweep({}, r, 0.0, kPi / 2.0), Arc::segment({0.0, r}, {0.0, 0.0}, leg_y),
                          Arc::segment({0.0, 0.0}, {r, 0.0}, leg_x)};
    return PlanarDomain({Loop{std::move(arcs), LoopOrientation::Outer}});
}

PlanarDomain gp_chain_domain(int k, double eps) {
    require(k >= 1, "gp_chain needs k >= 1");
    require(eps > 0.0 && eps < 0.5, "gp_chain needs eps in (0, 0.5)");
    std::vector<Vec2> centers;
    std::vector<double> radii;
    for (int j = -(k - 1); j <= k - 1; ++j) {
        centers.push_back({2.0 * j * (1.0 - eps), 0.0});
        radii.push_back(1.0);
    }
    SymmetryDescriptor s;
    s.reflections.emplace_back(Vec2{}, Vec2{0.0, 1.0});
    s.reflections.emplace_back(Vec2{}, Vec2{1.0, 0.0});
    s.rotation = RotationSymmetry{{}, 2};
    return union_of_disks(centers, radii).with_symmetry(s);
}

std::vector<Vec2> polygon_vertices(int p) {
    const double rc = 1.0 / std::sin(kPi / p);
    std::vector<Vec2> v;
    for (int i = 0; i < p; ++i) v.push_back(polar(rc, 2.0 * kPi * i / p));
    return v;
}

PlanarDomain bandle_flower_domain(int p) {
    require(p >= 2, "bandle_flower needs p >= 2");
    if (p == 2) return disk_domain(1.0).with_symmetry(dihedral(2));
    const double l = 1.0 / std::tan(kPi / p);
    std::vector<Arc> arcs;
    for (int i = 0; i < p; ++i) {
        const double phi = kPi * (2 * i + 1) / p;
        arcs.push_back(Arc::circle_sweep(polar(l, phi), 1.0, phi - kPi / 2.0, kPi));
    }
    return PlanarDomain({Loop{std::move(arcs), LoopOrientation::Outer}}, dihedral(p));
}

PlanarDomain bandle_chain_domain(int p, int m, double eps) {
    require(p >= 2, "bandle_chain needs p >= 2");
    require(m >= 1, "bandle_chain needs m >= 1");
    require(eps > 0.0 && eps < 0.5, "bandle_chain needs eps in (0, 0.5)");
    if (m == 1) return bandle_flower_domain(p);
    const double l = p == 2 ? 0.0 : 1.0 / std::tan(kPi / p);
    std::vector<Shape> shapes;
    if (p == 2) {
        shapes.emplace_back(DiskShape{{}, 1.0});
    } else {
        shapes.emplace_back(PolygonShape{polygon_vertices(p)});
        for (int i = 0; i < p; ++i) {
            const double phi = kPi * (2 * i + 1) / p;
            shapes.emplace_back(HalfDiskShape{polar(l, phi), 1.0, phi});
        }
    }
    std::vector<std::vector<DiskShape>> arms(p);
    for (int i = 1; i <= p; ++i) {
        const double phi = kPi * (2 * i - 1) / p;
        for (int j = 1; j <= m - 1; ++j) {
            arms[i - 1].push_back(DiskShape{polar(l + 2.0 * j, phi), 1.0 + eps});
            shapes.emplace_back(arms[i - 1].back());
        }
    }
    for (int a = 0; a < p; ++a)
        for (int b = a + 1; b < p; ++b)
            for (const auto& da : arms[a])
                for (const auto& db : arms[b])
                    if (norm(da.center - db.center) < da.radius + db.radius)
                        fail(ErrorKind::OverlapViolation, "bandle_chain arms intersect");
    return union_of_shapes(shapes).with_symmetry(dihedral(p));
}

PlanarDomain rot_cluster_domain(int p, int m, double eps) {
    require(p >= 3 && p <= 6, "rot_cluster needs 3 <= p <= 6");
    require(m >= 1, "rot_cluster needs m >= 1");
    require(eps > 0.0 && eps < 0.5, "rot_cluster needs eps in (0, 0.5)");
    std::vector<Vec2> centers{{0.0, 0.0}};
    std::vector<double> radii{1.0 + 2.0 * eps};
    for (int i = 1; i <= p; ++i) {
        const double phi = 2.0 * kPi * (i - 1) / p;
        for (int j = 1; j <= m; ++j) {
            centers.push_back(polar(2.0 * j + eps, phi));
            radii.push_back(1.0 + eps);
        }
    }
    for (int a = 0; a < p; ++a)
        for (int b = a + 1; b < p; ++b)
            for (int ja = 0; ja < m; ++ja)
                for (int jb = 0; jb < m; ++jb) {
                    const std::size_t ia = 1 + a * m + ja, ib = 1 + b * m + jb;
                    if (norm(centers[ia] - centers[ib]) < radii[ia] + radii[ib])
                        fail(ErrorKind::OverlapViolation, "rot_cluster chains intersect");
                }
    return union_of_disks(centers, radii).with_symmetry(dihedral(p));
}

PlanarDomain strip_domain(double w, double h) {
    require(w > 0.0 && h > 0.0, "strip needs positive width and depth");
    const Condition N = Condition::Neumann;
    std::vector<Arc> arcs{Arc::segment({0.0, -h}, {w, -h}, N), Arc::segment({w, -h}, {w, 0.0}, N),
                          Arc::segment({w, 0.0}, {0.0, 0.0}, Condition::Steklov), Arc::segment({0.0, 0.0}, {0.0, -h}, N)};
    SymmetryDescriptor s;
    s.reflections.emplace_back(Vec2{w / 2.0, 0.0}, Vec2{0.0, 1.0});
    return PlanarDomain({Loop{std::move(arcs), LoopOrientation::Outer}}, s);
}

double blob_radius(const std::vector<double>& a, const std::vector<double>& b, double th) {
    double r = a.empty() ? 0.0 : a[0];
    for (std::size_t j = 1; j < a.size(); ++j) r += a[j] * std::cos(j * th);
    for (std::size_t j = 0; j < b.size(); ++j) r += b[j] * std::sin((j + 1) * th);
    return r;
}

double blob_radius_derivative(const std::vector<double>& a, const std::vector<double>& b, double th) {
    double r = 0.0;
    for (std::size_t j = 1; j < a.size(); ++j) r -= j * a[j] * std::sin(j * th);
    for (std::size_t j = 0; j < b.size(); ++j) r += (j + 1) * b[j] * std::cos((j + 1) * th);
    return r;
}

int blob_rotation_order(const std::vector<double>& a, const std::vector<double>& b) {
    int q = 0;
    for (std::size_t j = 1; j < a.size(); ++j)
        if (a[j] != 0.0) q = std::gcd(q, static_cast<int>(j));
    for (std::size_t j = 0; j < b.size(); ++j)
        if (b[j] != 0.0) q = std::gcd(q, static_cast<int>(j + 1));
    return q;
}

/// Circular arc leaving p with unit tangent t and ending at q (a segment when collinear).
Arc tangent_arc(Vec2 p, Vec2 t, Vec2 q) {
    const Vec2 c = q - p;
    const double phi = std::atan2(cross(t, c), dot(t, c));
    if (std::abs(std::sin(phi)) < 1e-13) return Arc::segment(p, q, Condition::Steklov);
    const double r = norm(c) / (2.0 * std::abs(std::sin(phi)));
    const Vec2 center = p + (phi > 0.0 ? r : -r) * left_normal(t);
    const Vec2 rel = p - center;
    return Arc::circle_sweep(center, r, std::atan2(rel.y, rel.x), 2.0 * phi);
}

PlanarDomain smooth_blob_domain(const FamilySpec& spec) {
    require(!spec.cos_coeffs.empty() && spec.cos_coeffs[0] > 0.0, "smooth_blob needs a positive mean radius");
    require(spec.samples >= 32, "smooth_blob needs at least 32 sample intervals");
    for (int i = 0; i < 2048; ++i)
        require(blob_radius(spec.cos_coeffs, spec.sin_coeffs, 2.0 * kPi * i / 2048) > 0.0,
                "smooth_blob radius must stay positive");
    const int q = blob_rotation_order(spec.cos_coeffs, spec.sin_coeffs);
    auto arcs = blob_biarcs(spec.cos_coeffs, spec.sin_coeffs, spec.samples);
    SymmetryDescriptor s;
    bool even = true;
    for (double b : spec.sin_coeffs) even = even && b == 0.0;
    if (q == 0) {
        return disk_domain(spec.cos_coeffs[0]);
    }
    if (even) {
        for (int j = 0; j < q; ++j) s.reflections.emplace_back(Vec2{}, polar(1.0, kPi * j / q));
    }
    if (q > 1) s.rotation = RotationSymmetry{{}, q};
    return PlanarDomain({Loop{std::move(arcs), LoopOrientation::Outer}}, s);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::vector<Arc> blob_biarcs(const std::vector<double>& a, const std::vector<double>& b, int samples) {
    const int q = std::max(1, blob_rotation_order(a, b));
    const int step = std::lcm(2, q);
    const int n = ((samples + step - 1) / step) * step;
    std::vector<Vec2> pts(n), tangents(n);
    for (int i = 0; i < n; ++i) {
        const double th = 2.0 * kPi * i / n;
        const double r = blob_radius(a, b, th);
        const double dr = blob_radius_derivative(a, b, th);
        pts[i] = polar(r, th);
        tangents[i] = unit(dr * polar(1.0, th) + r * Vec2{-std::sin(th), std::cos(th)});
    }
    std::vector<Arc> arcs;
    for (int i = 0; i < n; ++i) {
        const Vec2 p0 = pts[i], p1 = pts[(i + 1) % n];
        const Vec2 t0 = tangents[i], t1 = tangents[(i + 1) % n];
        const Vec2 v = p1 - p0, t = t0 + t1;
        const double qa = dot(t, t) - 4.0, qb = dot(v, t), qc = dot(v, v);
        const double d = qc / (qb + std::sqrt(std::max(qb * qb - qa * qc, 0.0)));
        const Vec2 joint = 0.5 * (p0 + d * t0 + p1 - d * t1);
        arcs.push_back(tangent_arc(p0, t0, joint));
        arcs.push_back(tangent_arc(p1, -t1, joint).reversed());
    }
    return arcs;
}

std::string_view to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::Disk: return "disk";
        case FamilyKind::HalfDisk: return "half_disk";
        case FamilyKind::QuarterDisk: return "quarter_disk";
        case FamilyKind::GpChain: return "gp_chain";
        case FamilyKind::BandleFlower: return "bandle_flower";
        case FamilyKind::BandleChain: return "bandle_chain";
        case FamilyKind::RotCluster: return "rot_cluster";
        case FamilyKind::Strip: return "strip";
        case FamilyKind::SmoothBlob: return "smooth_blob";
    }
    return "?";
}

FamilySpec FamilySpec::disk(double r) {
    FamilySpec s;
    s.kind = FamilyKind::Disk;
    s.radius = r;
    return s;
}

FamilySpec FamilySpec::half_disk(double r, Condition diameter) {
    FamilySpec s;
    s.kind = FamilyKind::HalfDisk;
    s.radius = r;
    s.cond_a = diameter;
    return s;
}

FamilySpec FamilySpec::quarter_disk(double r, Condition leg_x, Condition leg_y) {
    FamilySpec s;
    s.kind = FamilyKind::QuarterDisk;
    s.radius = r;
    s.cond_a = leg_x;
    s.cond_b = leg_y;
    return s;
}

FamilySpec FamilySpec::gp_chain(int k, double eps) {
    FamilySpec s;
    s.kind = FamilyKind::GpChain;
    s.k = k;
    s.eps = eps;
    return s;
}

FamilySpec FamilySpec::bandle_flower(int p) {
    FamilySpec s;
    s.kind = FamilyKind::BandleFlower;
    s.p = p;
    return s;
}

FamilySpec FamilySpec::bandle_chain(int p, int m, double eps) {
    FamilySpec s;
    s.kind = FamilyKind::BandleChain;
    s.p = p;
    s.m = m;
    s.eps = eps;
    return s;
}

FamilySpec FamilySpec::rot_cluster(int p, int m, double eps) {
    FamilySpec s;
    s.kind = FamilyKind::RotCluster;
    s.p = p;
    s.m = m;
    s.eps = eps;
    return s;
}

FamilySpec FamilySpec::strip(double w, double h) {
    FamilySpec s;
    s.kind = FamilyKind::Strip;
    s.w = w;
    s.h = h;
    return s;
}

FamilySpec FamilySpec::smooth_blob(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs, int samples) {
    FamilySpec s;
    s.kind = FamilyKind::SmoothBlob;
    s.cos_coeffs = std::move(cos_coeffs);
    s.sin_coeffs = std::move(sin_coeffs);
    s.samples = samples;
    return s;
}

PlanarDomain make_family(const FamilySpec& spec) {
    switch (spec.kind) {
        case FamilyKind::Disk: return disk_domain(spec.radius);
        case FamilyKind::HalfDisk: return half_disk_domain(spec.radius, spec.cond_a);
        case FamilyKind::QuarterDisk: return quarter_disk_domain(spec.radius, spec.cond_a, spec.cond_b);
        case FamilyKind::GpChain: return gp_chain_domain(spec.k, spec.eps);
        case FamilyKind::BandleFlower: return bandle_flower_domain(spec.p);
        case FamilyKind::BandleChain: return bandle_chain_domain(spec.p, spec.m, spec.eps);
        case FamilyKind::RotCluster: return rot_cluster_domain(spec.p, spec.m, spec.eps);
        case FamilyKind::Strip: return strip_domain(spec.w, spec.h);
        case FamilyKind::SmoothBlob: return smooth_blob_domain(spec);
    }
    fail(ErrorKind::InvalidArgument, "unknown family");
}

std::string describe(const FamilySpec& s) {
    std::string out(to_string(s.kind));
    out += ':';
    auto list = [](const std::vector<double>& v) {
        std::string r;
        for (std::size_t i = 0; i < v.size(); ++i) r += (i ? ";" : "") + fmt(v[i]);
        return r;
    };
    switch (s.kind) {
        case FamilyKind::Disk: out += "r=" + fmt(s.radius); break;
        case FamilyKind::HalfDisk: out += "r=" + fmt(s.radius) + ",cond_a=" + std::string(to_string(s.cond_a)); break;
        case FamilyKind::QuarterDisk:
            out += "r=" + fmt(s.radius) + ",cond_a=" + std::string(to_string(s.cond_a)) +
                   ",cond_b=" + std::string(to_string(s.cond_b));
            break;
        case FamilyKind::GpChain: out += "k=" + std::to_string(s.k) + ",eps=" + fmt(s.eps); break;
        case FamilyKind::BandleFlower: out += "p=" + std::to_string(s.p); break;
        case FamilyKind::BandleChain:
        case FamilyKind::RotCluster:
            out += "p=" + std::to_string(s.p) + ",m=" + std::to_string(s.m) + ",eps=" + fmt(s.eps);
            break;
        case FamilyKind::Strip: out += "w=" + fmt(s.w) + ",h=" + fmt(s.h); break;
        case FamilyKind::SmoothBlob:
            out += "a=" + list(s.cos_coeffs) + ",b=" + list(s.sin_coeffs) + ",n=" + std::to_string(s.samples);
            break;
    }
    return out;
}

FamilySpec parse_family(std::string_view text) {
    const auto colon = text.find(':');
    const std::string name(text.substr(0, colon));
    FamilySpec s;
    bool found = false;
    for (auto k : {FamilyKind::Disk, FamilyKind::HalfDisk, FamilyKind::QuarterDisk, FamilyKind::GpChain,
                   FamilyKind::BandleFlower, FamilyKind::BandleChain, FamilyKind::RotCluster, FamilyKind::Strip,
                   FamilyKind::SmoothBlob})
        if (to_string(k) == name) {
            s.kind = k;
            found = true;
        }
    if (!found) fail(ErrorKind::InvalidArgument, "unknown family '" + name + "'");
    if (s.kind == FamilyKind::HalfDisk) s.cond_a = Condition::Neumann;
    if (colon == std::string_view::npos) return s;

    auto number = [](const std::string& v) {
        try {
            std::size_t used = 0;
            const double d = std::stod(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
            return d;
        } catch (const std::exception&) {
            fail(ErrorKind::InvalidArgument, "bad number '" + v + "' in family spec");
        }
    };
    auto integer = [&](const std::string& v) {
        const double d = number(v);
        if (d != std::floor(d)) fail(ErrorKind::InvalidArgument, "expected an integer, got '" + v + "'");
        return static_cast<int>(d);
    };
    auto list = [&](const std::string& v) {
        std::vector<double> out;
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ';'))
            if (!item.empty()) out.push_back(number(item));
        return out;
    };

    std::stringstream ss{std::string(text.substr(colon + 1))};
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) fail(ErrorKind::InvalidArgument, "expected key=value in family spec");
        const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        if (key == "k") s.k = integer(val);
        else if (key == "p") s.p = integer(val);
        else if (key == "m") s.m = integer(val);
        else if (key == "eps") s.eps = number(val);
        else if (key == "r") s.radius = number(val);
        else if (key == "w") s.w = number(val);
        else if (key == "h") s.h = number(val);
        else if (key == "n") s.samples = integer(val);
        else if (key == "a") s.cos_coeffs = list(val);
        else if (key == "b") s.sin_coeffs = list(val);
        else if (key == "cond_a") s.cond_a = condition_from_string(val);
        else if (key == "cond_b") s.cond_b = condition_from_string(val);
        else fail(ErrorKind::InvalidArgument, "unknown family key '" + key + "'");
    }
    return s;
}

FamilySpec with_parameter(FamilySpec spec, double value) {
    switch (spec.kind) {
        case FamilyKind::GpChain:
        case FamilyKind::BandleChain:
        case FamilyKind::RotCluster: spec.eps = value; break;
        case FamilyKind::Strip: spec.h = value; break;
        case FamilyKind::BandleFlower: spec.p = static_cast<int>(std::lround(value)); break;
        default: spec.radius = value; break;
    }
    return spec;
}

FamilySpec random_blob(std::uint64_t seed, bool symmetric, int modes, double amplitude) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> a{1.0}, b;
    for (int j = 1; j <= modes; ++j) {
        const double scale = amplitude / j;
        a.push_back(j == 1 ? 0.0 : scale * u(rng));
        b.push_back(symmetric || j == 1 ? 0.0 : scale * u(rng));
    }
    // ensure a genuinely non-circular shape
    if (std::abs(a[2]) < 0.3 * amplitude / 2.0) a[2] = (a[2] < 0.0 ? -0.3 : 0.3) * amplitude;
    while (!b.empty() && b.back() == 0.0) b.pop_back();
    return FamilySpec::smooth_blob(a, b);
}

}  // namespace steklov
