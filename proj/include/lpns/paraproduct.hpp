#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "lpns/dyadic.hpp"

namespace lpns {

/// Per-axis retained band for the 2/3 dealiasing rule. K = floor((n-1)/3)
/// guarantees 3K < n, so products of two retained fields are alias-free on
/// the retained window and triple-product quadratures are exact.
inline int dealias_limit(int n) { return (n - 1) / 3; }

/// Zeroes every mode with |k_a| > floor((n_a-1)/3) on some axis.
inline ScalarField dealias(const ScalarField& f) {
    const FourierGrid& g = f.grid();
    const int K1 = dealias_limit(g.n(0)), K2 = dealias_limit(g.n(1)), K3 = dealias_limit(g.n(2));
    ScalarField out = f;
    for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
        if (std::abs(k1) > K1 || std::abs(k2) > K2 || std::abs(k3) > K3) out[idx] = 0.0;
    });
    return out;
}

inline VectorField dealias(const VectorField& u) {
    return VectorField(dealias(u.comp(1)), dealias(u.comp(2)), dealias(u.comp(3)));
}

/// Pointwise product under the 2/3 rule: both factors are truncated to the
/// retained band, multiplied in physical space, and the result truncated
/// again; on the retained window this is the exact Galerkin product.
inline ScalarField dealiased_product(const ScalarField& a, const ScalarField& b) {
    a.check_same_grid(b);
    const auto pa = transform_inverse(dealias(a));
    const auto pb = transform_inverse(dealias(b));
    std::vector<double> prod(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i) prod[i] = pa[i] * pb[i];
    return dealias(transform_forward(a.grid(), prod));
}

/// Bony decomposition of the (dealiased) product ab along one kind.
///
/// t_ab + t_ba + r_ab reconstructs the dealiased product exactly; the
/// below-range (mean) content of both factors multiplies into t_ab, and
/// t_tilde_ab (= sum S_{q+2}a Delta_q b plus the same mean term) satisfies
/// t_tilde_ab + t_ba = ab.
struct BonyParts {
    ScalarField t_ab;
    ScalarField t_ba;
    ScalarField r_ab;
    ScalarField t_tilde_ab;
    Kind kind;
};

inline BonyParts bony(const DyadicFilterBank& bank, const ScalarField& a, const ScalarField& b,
                      Kind kind) {
    a.check_same_grid(b);
    if (a.grid() != bank.grid())
        throw std::invalid_argument("field grid does not match bank grid");
    const FourierGrid& g = a.grid();
    const ScalarField da = dealias(a);
    const ScalarField db = dealias(b);
    const int jmin = bank.j_min(kind), jmax = bank.j_max(kind);
    const int levels = jmax - jmin + 1;

    // physical-space views of every block and low-pass needed below
    std::vector<std::vector<double>> blk_a(levels), blk_b(levels);
    std::vector<std::vector<double>> low_a(levels), low_b(levels), low2_a(levels);
    for (int q = jmin; q <= jmax; ++q) {
        const int i = q - jmin;
        blk_a[i] = transform_inverse(block(bank, da, kind, q));
        blk_b[i] = transform_inverse(block(bank, db, kind, q));
        low_a[i] = transform_inverse(lowpass(bank, da, kind, q - 1));
        low_b[i] = transform_inverse(lowpass(bank, db, kind, q - 1));
        low2_a[i] = transform_inverse(lowpass(bank, da, kind, q + 2));
    }

    const std::size_t N = g.size();
    std::vector<double> acc_tab(N, 0.0), acc_tba(N, 0.0), acc_r(N, 0.0), acc_tt(N, 0.0);
    for (int q = jmin; q <= jmax; ++q) {
        const int i = q - jmin;
        for (std::size_t x = 0; x < N; ++x) {
            acc_tab[x] += low_a[i][x] * blk_b[i][x];
            acc_tba[x] += low_b[i][x] * blk_a[i][x];
            acc_tt[x] += low2_a[i][x] * blk_b[i][x];
        }
        for (int off = -1; off <= 1; ++off) {
            const int qa = q + off;
            if (qa < jmin || qa > jmax) continue;
            const auto& ba = blk_a[qa - jmin];
            for (std::size_t x = 0; x < N; ++x) acc_r[x] += ba[x] * blk_b[i][x];
        }
    }

    const std::complex<double> mean_term = da.mean() * db.mean();
    auto finish = [&](std::vector<double>& phys, bool add_mean) {
        ScalarField f = dealias(transform_forward(g, phys));
        if (add_mean) f[0] += mean_term;
        return f;
    };
    return BonyParts{finish(acc_tab, true), finish(acc_tba, false), finish(acc_r, false),
                     finish(acc_tt, true), kind};
}

/// Horizontal low/high split at radius 1/E: f_flat keeps |k_h|/L < 1/E,
/// ties go to f_sharp. f_flat + f_sharp = f exactly.
inline std::pair<ScalarField, ScalarField> sharp_flat_split(const ScalarField& f, double E) {
    if (!(E > 0.0)) throw std::invalid_argument("split parameter E must be positive");
    const FourierGrid& g = f.grid();
    ScalarField flat = f;
    ScalarField sharp = f;
    const double thresh = g.box_length() / E; // compare |k_h| against L/E
    for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
        (void)k3;
        const double rh = std::sqrt(double(k1) * k1 + double(k2) * k2);
        if (rh < thresh)
            sharp[idx] = 0.0;
        else
            flat[idx] = 0.0;
    });
    return {std::move(flat), std::move(sharp)};
}

/// Split by dominated frequencies: the good part collects Delta^h_k Delta^v_q
/// pairs with q <= k (vertical controlled by horizontal), the bad part the
/// rest. Content outside every (k,q) pair (the xi_h = 0 and xi_v = 0 planes)
/// is assigned to the good part; f_good + f_bad = f exactly.
struct GoodBadParts {
    ScalarField good;
    ScalarField bad;
    double below_range_mass_fraction = 0.0; // |c|^2 mass assigned to good outside block pairs
};

inline GoodBadParts good_bad_split(const DyadicFilterBank& bank, const ScalarField& f) {
    if (f.grid() != bank.grid())
        throw std::invalid_argument("field grid does not match bank grid");
    const FourierGrid& g = f.grid();
    const int hk_min = bank.j_min(Kind::Horizontal), hk_max = bank.j_max(Kind::Horizontal);
    const int vq_min = bank.j_min(Kind::Vertical), vq_max = bank.j_max(Kind::Vertical);

    ScalarField good = f;
    ScalarField bad = f;
    double below_mass = 0.0, total_mass = 0.0;
    std::size_t idx = 0;
    const int n1 = g.n(0), n2 = g.n(1), n3 = g.n(2);
    for (int i1 = 0; i1 < n1; ++i1) {
        const int k1 = g.wavenumber(0, i1);
        for (int i2 = 0; i2 < n2; ++i2) {
            const int k2 = g.wavenumber(1, i2);
            const std::size_t hidx = static_cast<std::size_t>(i1) * n2 + i2;
            const double rh = bank.radius(Kind::Horizontal, k1, k2, 0);
            for (int i3 = 0; i3 < n3; ++i3, ++idx) {
                const int k3 = g.wavenumber(2, i3);
                const double rv = bank.radius(Kind::Vertical, 0, 0, k3);
                const double mass = std::norm(f[idx]);
                total_mass += mass;
                double gm;
                if (rh == 0.0 || rv == 0.0) {
                    gm = 1.0;
                    below_mass += mass;
                } else {
                    gm = 0.0;
                    for (int k = hk_min; k <= hk_max; ++k) {
                        const double mh = bank.multiplier(Kind::Horizontal, k)[hidx];
                        if (mh == 0.0) continue;
                        for (int q = vq_min; q <= std::min(k, vq_max); ++q) {
                            const double mv =
                                bank.multiplier(Kind::Vertical, q)[static_cast<std::size_t>(i3)];
                            if (mv != 0.0) gm += mh * mv;
                        }
                    }
                }
                good[idx] *= gm;
                bad[idx] *= (1.0 - gm);
            }
        }
    }
    GoodBadParts parts{std::move(good), std::move(bad), 0.0};
    if (total_mass > 0.0) parts.below_range_mass_fraction = below_mass / total_mass;
    return parts;
}

} // namespace lpns
