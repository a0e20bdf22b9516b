#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lpns/field.hpp"

namespace lpns {

/// Direction of a dyadic decomposition: 2d horizontal radius |xi_h|,
/// 1d vertical frequency |xi_3|, or the full 3d radius.
enum class Kind { Horizontal, Vertical, Isotropic };

namespace bump {

/// Smooth bridge built from g(x) = exp(-1/x): identically 0 for x <= 0 and
/// identically 1 for x >= 1, so the support bounds below are exact.
inline double g(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

inline double bridge(double x) {
    const double a = g(x);
    const double b = g(1.0 - x);
    if (a == 0.0) return 0.0;
    if (b == 0.0) return 1.0;
    return a / (a + b);
}

inline constexpr double kPsiPlateau = 0.75;      // psi == 1 on [0, 3/4]
inline constexpr double kPsiSupport = 4.0 / 3.0; // psi == 0 beyond 4/3
inline constexpr double kPhiLo = 0.75;           // phi support lower edge
inline constexpr double kPhiHi = 8.0 / 3.0;      // phi support upper edge

/// Low-pass profile: 1 on |xi| <= 3/4, 0 on |xi| >= 4/3, smooth in between.
inline double psi(double r) {
    if (r <= kPsiPlateau) return 1.0;
    if (r >= kPsiSupport) return 0.0;
    return 1.0 - bridge((r - kPsiPlateau) / (kPsiSupport - kPsiPlateau));
}

/// Annulus profile phi(r) = psi(r/2) - psi(r), supported in [3/4, 8/3].
/// Values below 1e-300 are clamped to exact zero so support identities hold
/// exactly on the lattice.
inline double phi(double r) {
    if (r <= kPhiLo || r >= kPhiHi) return 0.0;
    double v = psi(r / 2.0) - psi(r);
    if (v < 1e-300) return 0.0;
    return v > 1.0 ? 1.0 : v;
}

} // namespace bump

/// Precomputed dyadic multipliers phi(2^{-j} |xi_kind|) on the lattice for all
/// active indices j, one table per kind. An index is active when its annulus
/// (3/4 * 2^j, 8/3 * 2^j) meets a nonzero lattice frequency; the partition
/// sum over the active range is exactly 1 at every nonzero lattice point.
class DyadicFilterBank {
  public:
    explicit DyadicFilterBank(const FourierGrid& grid) : grid_(&grid) {
        build(Kind::Horizontal);
        build(Kind::Vertical);
        build(Kind::Isotropic);
    }

    const FourierGrid& grid() const { return *grid_; }

    int j_min(Kind k) const { return table(k).j_min; }
    int j_max(Kind k) const { return table(k).j_max; }
    bool in_range(Kind k, int j) const { return j >= j_min(k) && j <= j_max(k); }

    /// Multiplier array for index j; shape depends on kind (h: n1*n2, v: n3,
    /// iso: full lattice).
    const std::vector<double>& multiplier(Kind k, int j) const {
        const Table& t = table(k);
        if (j < t.j_min || j > t.j_max) throw std::out_of_range("dyadic index out of active range");
        return t.values[static_cast<std::size_t>(j - t.j_min)];
    }

    /// |xi_kind| at a lattice point, in physical units k/L.
    double radius(Kind k, int k1, int k2, int k3) const {
        const double invL = 1.0 / grid_->box_length();
        switch (k) {
            case Kind::Horizontal: return std::sqrt(double(k1) * k1 + double(k2) * k2) * invL;
            case Kind::Vertical: return std::abs(k3) * invL;
            default: return std::sqrt(double(k1) * k1 + double(k2) * k2 + double(k3) * k3) * invL;
        }
    }

    static double annulus_lo(int j) { return bump::kPhiLo * std::ldexp(1.0, j); }
    static double annulus_hi(int j) { return bump::kPhiHi * std::ldexp(1.0, j); }

  private:
    struct Table {
        int j_min = 0;
        int j_max = -1;
        std::vector<std::vector<double>> values;
    };

    const Table& table(Kind k) const { return tables_[static_cast<int>(k)]; }

    std::size_t flat_index(Kind k, int i1, int i2, int i3) const {
        switch (k) {
            case Kind::Horizontal:
                return static_cast<std::size_t>(i1) * grid_->n(1) + static_cast<std::size_t>(i2);
            case Kind::Vertical: return static_cast<std::size_t>(i3);
            default: return grid_->index(i1, i2, i3);
        }
    }

    std::size_t table_size(Kind k) const {
        switch (k) {
            case Kind::Horizontal:
                return static_cast<std::size_t>(grid_->n(0)) * static_cast<std::size_t>(grid_->n(1));
            case Kind::Vertical: return static_cast<std::size_t>(grid_->n(2));
            default: return grid_->size();
        }
    }

    template <typename Fn>
    void for_each_radius(Kind k, Fn&& fn) const {
        const FourierGrid& g = *grid_;
        if (k == Kind::Vertical) {
            for (int i3 = 0; i3 < g.n(2); ++i3)
                fn(flat_index(k, 0, 0, i3), radius(k, 0, 0, g.wavenumber(2, i3)));
        } else if (k == Kind::Horizontal) {
            for (int i1 = 0; i1 < g.n(0); ++i1)
                for (int i2 = 0; i2 < g.n(1); ++i2)
                    fn(flat_index(k, i1, i2, 0),
                       radius(k, g.wavenumber(0, i1), g.wavenumber(1, i2), 0));
        } else {
            for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
                fn(idx, radius(k, k1, k2, k3));
            });
        }
    }

    void build(Kind k) {
        Table& t = tables_[static_cast<int>(k)];
        double r_min = 0.0, r_max = 0.0;
        for_each_radius(k, [&](std::size_t, double r) {
            if (r > 0.0 && (r_min == 0.0 || r < r_min)) r_min = r;
            r_max = std::max(r_max, r);
        });
        // scan a generous window around the radii span and keep indices whose
        // annulus actually meets the lattice
        const int lo = static_cast<int>(std::floor(std::log2(r_min / bump::kPhiHi))) - 2;
        const int hi = static_cast<int>(std::ceil(std::log2(r_max / bump::kPhiLo))) + 2;
        int found_min = 0, found_max = -1;
        for (int j = lo; j <= hi; ++j) {
            std::vector<double> vals(table_size(k), 0.0);
            const double scale = std::ldexp(1.0, -j);
            bool any = false;
            for_each_radius(k, [&](std::size_t fi, double r) {
                const double v = bump::phi(scale * r);
                vals[fi] = v;
                if (v > 0.0) any = true;
            });
            if (!any) {
                if (found_max >= found_min) break; // past the upper end
                continue;
            }
            if (found_max < found_min) found_min = j;
            found_max = j;
            t.values.push_back(std::move(vals));
        }
        t.j_min = found_min;
        t.j_max = found_max;
    }

    const FourierGrid* grid_;
    Table tables_[3];
};

inline DyadicFilterBank build_bank(const FourierGrid& grid) { return DyadicFilterBank(grid); }

namespace detail {

template <typename Fn>
inline void apply_kind_multiplier(ScalarField& f, Kind k, Fn&& value) {
    const FourierGrid& g = f.grid();
    std::size_t idx = 0;
    const int n1 = g.n(0), n2 = g.n(1), n3 = g.n(2);
    for (int i1 = 0; i1 < n1; ++i1)
        for (int i2 = 0; i2 < n2; ++i2) {
            const std::size_t hidx = static_cast<std::size_t>(i1) * n2 + i2;
            for (int i3 = 0; i3 < n3; ++i3, ++idx) {
                const std::size_t fi = (k == Kind::Horizontal) ? hidx
                                       : (k == Kind::Vertical) ? static_cast<std::size_t>(i3)
                                                               : idx;
                f[idx] *= value(fi);
            }
        }
}

} // namespace detail

/// Dyadic block Delta_j f for the given kind. Out-of-range j yields the zero
/// field; `out_of_range`, when supplied, reports that condition.
inline ScalarField block(const DyadicFilterBank& bank, const ScalarField& f, Kind k, int j,
                         bool* out_of_range = nullptr) {
    if (f.grid() != bank.grid())
        throw std::invalid_argument("field grid does not match bank grid");
    if (!bank.in_range(k, j)) {
        if (out_of_range) *out_of_range = true;
        return ScalarField(f.grid());
    }
    if (out_of_range) *out_of_range = false;
    ScalarField out = f;
    const auto& m = bank.multiplier(k, j);
    detail::apply_kind_multiplier(out, k, [&](std::size_t fi) { return m[fi]; });
    return out;
}

/// Low-pass S_j f = sum_{j' < j} Delta_{j'} f plus the below-range content
/// (for kind h the whole xi_h = 0 plane, for kind v the xi_3 = 0 plane, for
/// iso the mean mode), computed as the exact partial sum of the stored
/// multipliers.
inline ScalarField lowpass(const DyadicFilterBank& bank, const ScalarField& f, Kind k, int j) {
    if (f.grid() != bank.grid())
        throw std::invalid_argument("field grid does not match bank grid");
    const FourierGrid& g = f.grid();
    std::vector<double> acc(bank.multiplier(k, bank.j_min(k)).size(), 0.0);
    for (int jp = bank.j_min(k); jp < j && jp <= bank.j_max(k); ++jp) {
        const auto& m = bank.multiplier(k, jp);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += m[i];
    }
    // below-range content: radius-zero points always pass
    ScalarField out = f;
    std::size_t idx = 0;
    const int n1 = g.n(0), n2 = g.n(1), n3 = g.n(2);
    for (int i1 = 0; i1 < n1; ++i1) {
        const int k1 = g.wavenumber(0, i1);
        for (int i2 = 0; i2 < n2; ++i2) {
            const int k2 = g.wavenumber(1, i2);
            const std::size_t hidx = static_cast<std::size_t>(i1) * n2 + i2;
            for (int i3 = 0; i3 < n3; ++i3, ++idx) {
                const int k3 = g.wavenumber(2, i3);
                const double r = bank.radius(k, k1, k2, k3);
                double m;
                if (r == 0.0) {
                    m = 1.0;
                } else {
                    const std::size_t fi = (k == Kind::Horizontal) ? hidx
                                           : (k == Kind::Vertical) ? static_cast<std::size_t>(i3)
                                                                   : idx;
                    m = acc[fi];
                }
                out[idx] *= m;
            }
        }
    }
    return out;
}

} // namespace lpns
