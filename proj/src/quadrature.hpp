#pragma once

#include <cmath>
#include <numbers>
#include <vector>

namespace steklov::quad {

/// Gauss-Legendre rule mapped to [0, 1].
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
    std::vector<double> bary;  // barycentric weights for Lagrange interpolation at x
};

inline GaussRule gauss_legendre(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        r.x[n - 1 - i] = 0.5 * (1.0 + z);
        r.w[n - 1 - i] = 1.0 / ((1.0 - z * z) * dp * dp);
    }
    r.bary.resize(n);
    for (int j = 0; j < n; ++j) {
        double p = 1.0;
        for (int k = 0; k < n; ++k)
            if (k != j) p *= r.x[j] - r.x[k];
        r.bary[j] = 1.0 / p;
    }
    // rescale to avoid overflow for high orders
    double m = 0.0;
    for (double b : r.bary) m = std::max(m, std::abs(b));
    for (double& b : r.bary) b /= m;
    return r;
}

/// Lagrange basis values at u (barycentric form).
inline void lagrange(const GaussRule& r, double u, double* out) {
    const std::size_t n = r.x.size();
    double denom = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = u - r.x[j];
        if (d == 0.0) {
            for (std::size_t k = 0; k < n; ++k) out[k] = k == j ? 1.0 : 0.0;
            return;
        }
        out[j] = r.bary[j] / d;
        denom += out[j];
    }
    for (std::size_t j = 0; j < n; ++j) out[j] /= denom;
}

/// Tanh-sinh rule on [0, 1]: abscissae as offsets from both ends, plus weights.
struct TanhSinh {
    std::vector<double> from_left;   // x
    std::vector<double> from_right;  // 1 - x, computed without cancellation
    std::vector<double> w;
};

inline TanhSinh tanh_sinh(double h = 1.0 / 16.0, double tmax = 3.4) {
    TanhSinh r;
    const int n = static_cast<int>(std::ceil(tmax / h));
    for (int k = -n; k <= n; ++k) {
        const double t = k * h;
        const double z = 0.5 * std::numbers::pi * std::sinh(t);
        const double left = 1.0 / (1.0 + std::exp(-2.0 * z));
        const double right = 1.0 / (1.0 + std::exp(2.0 * z));
        const double c = std::cosh(z);
        const double w = h * 0.5 * std::numbers::pi * std::cosh(t) / (2.0 * c * c);
        if (w < 1e-300 || left <= 0.0 || right <= 0.0) continue;
        r.from_left.push_back(left);
        r.from_right.push_back(right);
        r.w.push_back(w);
    }
    return r;
}

}  // namespace steklov::quad
