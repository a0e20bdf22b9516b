#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "lpns/paraproduct.hpp"
#include "lpns/vector_calculus.hpp"

namespace lpns {

/// Deterministic Gaussian stream: mt19937_64 plus hand-rolled Box-Muller, so
/// the same seed yields the same fields on every platform (std's
/// normal_distribution is implementation-defined).
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

    double uniform01() {
        // 53-bit mantissa in [0, 1)
        return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01(), u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * FourierGrid::pi() * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct Band {
    double lo = 1.0; // inclusive isotropic radius bounds, in units of |k| (integer lattice)
    double hi = 4.0;
};

/// Random real scalar: white Gaussian noise sampled in physical space,
/// band-limited to lo <= |k| <= hi (integer radius), then rescaled to unit
/// (or requested) L2 norm. Deterministic per seed.
inline ScalarField random_scalar(const FourierGrid& grid, std::uint64_t seed, Band band,
                                 double l2_target = 1.0) {
    GaussianStream gs(seed);
    std::vector<double> samples(grid.size());
    for (auto& v : samples) v = gs.gaussian();
    ScalarField f = transform_forward(grid, samples);
    bool any = false;
    for_each_mode(grid, [&](std::size_t idx, int k1, int k2, int k3) {
        const double r = std::sqrt(double(k1) * k1 + double(k2) * k2 + double(k3) * k3);
        if (r < band.lo || r > band.hi)
            f[idx] = 0.0;
        else
            any = true;
    });
    if (!any) throw std::invalid_argument("empty spectral band");
    const double n = l2_norm(f);
    if (n > 0.0) f *= l2_target / n;
    return f;
}

/// Random divergence-free velocity: Hermitian Gaussian coefficients,
/// band-limited, Leray-projected and rescaled so ||u||_{L2} equals the
/// requested amplitude exactly. Deterministic per seed.
inline VectorField random_divfree(const FourierGrid& grid, std::uint64_t seed, Band band,
                                  double amplitude) {
    const double kmax =
        std::sqrt(double(grid.n(0)) * grid.n(0) + double(grid.n(1)) * grid.n(1) +
                  double(grid.n(2)) * grid.n(2)) /
        2.0;
    if (band.lo > kmax || band.hi < 1.0) throw std::invalid_argument("empty spectral band");
    GaussianStream gs(seed);
    VectorField u(grid);
    for (int c = 1; c <= 3; ++c) {
        std::vector<double> samples(grid.size());
        for (auto& v : samples) v = gs.gaussian();
        u.comp(c) = transform_forward(grid, samples);
    }
    bool any = false;
    for_each_mode(grid, [&](std::size_t idx, int k1, int k2, int k3) {
        const double r = std::sqrt(double(k1) * k1 + double(k2) * k2 + double(k3) * k3);
        if (r < band.lo || r > band.hi) {
            for (int c = 1; c <= 3; ++c) u.comp(c)[idx] = 0.0;
        } else {
            any = true;
        }
    });
    if (!any) throw std::invalid_argument("empty spectral band");
    u = leray_project(u);
    const double n = l2_norm(u);
    if (n > 0.0) u *= amplitude / n;
    return u;
}

} // namespace lpns
