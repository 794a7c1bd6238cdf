#pragma once

#include "steklov/geometry.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace steklov {

enum class FamilyKind {
    Disk,
    HalfDisk,
    QuarterDisk,
    GpChain,
    BandleFlower,
    BandleChain,
    RotCluster,
    Strip,
    SmoothBlob,
};

std::string_view to_string(FamilyKind kind);

/// Parameters of a constructed domain. Only the fields relevant to `kind` are read.
struct FamilySpec {
    FamilyKind kind = FamilyKind::Disk;
    int k = 2;
    int p = 3;
    int m = 1;
    double eps = 0.1;
    double radius = 1.0;
    double w = 1.0;
    double h = 1.0;
    Condition cond_a = Condition::Neumann;  // half-disk diameter, quarter-disk leg on the x-axis
    Condition cond_b = Condition::Dirichlet;  // quarter-disk leg on the y-axis
    std::vector<double> cos_coeffs{1.0};  // r(θ) = Σ a_j cos jθ + Σ b_j sin jθ, a_0 first
    std::vector<double> sin_coeffs;       // b_1, b_2, ...
    int samples = 64;

    static FamilySpec disk(double r = 1.0);
    static FamilySpec half_disk(double r = 1.0, Condition diameter = Condition::Neumann);
    static FamilySpec quarter_disk(double r = 1.0, Condition leg_x = Condition::Neumann,
                                   Condition leg_y = Condition::Dirichlet);
    static FamilySpec gp_chain(int k, double eps);
    static FamilySpec bandle_flower(int p);
    static FamilySpec bandle_chain(int p, int m, double eps);
    static FamilySpec rot_cluster(int p, int m, double eps);
    static FamilySpec strip(double w, double h);
    static FamilySpec smooth_blob(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs = {},
                                  int samples = 64);
};

PlanarDomain make_family(const FamilySpec& spec);

/// Compact text form, e.g. "gp_chain:k=2,eps=0.1".
std::string describe(const FamilySpec& spec);
FamilySpec parse_family(std::string_view text);

/// Sets the swept parameter: eps for the disk-chain families, h for strips, p for flowers,
/// the radius otherwise.
FamilySpec with_parameter(FamilySpec spec, double value);

/// Seeded random star-shaped blob with a few low Fourier modes; `symmetric` drops the sine terms.
FamilySpec random_blob(std::uint64_t seed, bool symmetric = false, int modes = 4, double amplitude = 0.12);

/// Circular-arc resampling of the radial graph r(θ): one biarc per sample interval.
std::vector<Arc> blob_biarcs(const std::vector<double>& cos_coeffs, const std::vector<double>& sin_coeffs,
                             int samples);

}  // namespace steklov
