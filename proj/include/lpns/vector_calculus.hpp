#pragma once

#include <array>
#include <cmath>
#include <sstream>

#include "lpns/lebesgue.hpp"

namespace lpns {

/// Vertical vorticity omega^3 = d1 u^2 - d2 u^1.
inline ScalarField vorticity3(const VectorField& u) {
    return derivative(u.comp(2), 1) - derivative(u.comp(1), 2);
}

/// Relative divergence defect: ||div u||_{L2} / || |k| u ||_{L2}; zero field
/// counts as divergence-free.
inline double divergence_defect(const VectorField& u) {
    const FourierGrid& g = u.grid();
    double div2 = 0.0, grad2 = 0.0;
    for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
        const std::complex<double> dv = double(k1) * u.comp(1)[idx] + double(k2) * u.comp(2)[idx] +
                                        double(k3) * u.comp(3)[idx];
        const double k2n = double(k1) * k1 + double(k2) * k2 + double(k3) * k3;
        div2 += std::norm(dv);
        grad2 += k2n * (std::norm(u.comp(1)[idx]) + std::norm(u.comp(2)[idx]) +
                        std::norm(u.comp(3)[idx]));
    });
    if (grad2 == 0.0) return 0.0;
    return std::sqrt(div2 / grad2);
}

/// Leray projection (I - kk^T/|k|^2) applied mode-wise; the mean mode is left
/// untouched. Idempotent and divergence-annihilating by construction.
inline VectorField leray_project(const VectorField& v) {
    VectorField out = v;
    for_each_mode(v.grid(), [&](std::size_t idx, int k1, int k2, int k3) {
        const double k2n = double(k1) * k1 + double(k2) * k2 + double(k3) * k3;
        if (k2n == 0.0) return;
        const std::complex<double> kd =
            (double(k1) * out.comp(1)[idx] + double(k2) * out.comp(2)[idx] +
             double(k3) * out.comp(3)[idx]) /
            k2n;
        out.comp(1)[idx] -= double(k1) * kd;
        out.comp(2)[idx] -= double(k2) * kd;
        out.comp(3)[idx] -= double(k3) * kd;
    });
    return out;
}

/// Horizontal div-curl decomposition of u^h:
///   curl_part = grad_h^perp inv(Delta_h) omega^3,
///   grad_part = -grad_h inv(Delta_h) d3 u^3,
/// with inv(Delta_h) = 0 on the k_h = 0 plane. That plane's horizontal
/// velocity content is returned as plane_residual, so
/// curl_part + grad_part + plane_residual = u^h exactly for divergence-free u.
struct DivCurlParts {
    std::array<ScalarField, 2> curl_part;
    std::array<ScalarField, 2> grad_part;
    std::array<ScalarField, 2> plane_residual;
};

inline DivCurlParts divcurl_decompose(const VectorField& u, double div_tolerance = 1e-8) {
    const double defect = divergence_defect(u);
    if (defect > div_tolerance) {
        std::ostringstream msg;
        msg << "divcurl_decompose requires divergence-free input (relative defect " << defect
            << " > " << div_tolerance << ")";
        throw std::invalid_argument(msg.str());
    }
    const FourierGrid& g = u.grid();
    const ScalarField w3 = vorticity3(u);
    const ScalarField d3u3 = derivative(u.comp(3), 3);

    DivCurlParts parts{{ScalarField(g), ScalarField(g)},
                       {ScalarField(g), ScalarField(g)},
                       {ScalarField(g), ScalarField(g)}};
    for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
        (void)k3;
        const double kh2 = double(k1) * k1 + double(k2) * k2; // units of 1/L^2 cancel below
        if (kh2 == 0.0) {
            parts.plane_residual[0][idx] = u.comp(1)[idx];
            parts.plane_residual[1][idx] = u.comp(2)[idx];
            return;
        }
        const double L = g.box_length();
        // inv(Delta_h) = -L^2/kh2; grad_h^perp = (-d2, d1)
        const std::complex<double> inv_w = -(L * L / kh2) * w3[idx];
        const std::complex<double> inv_d = -(L * L / kh2) * d3u3[idx];
        const std::complex<double> i(0.0, 1.0);
        parts.curl_part[0][idx] = -i * (double(k2) / L) * inv_w;
        parts.curl_part[1][idx] = i * (double(k1) / L) * inv_w;
        parts.grad_part[0][idx] = -i * (double(k1) / L) * inv_d;
        parts.grad_part[1][idx] = -i * (double(k2) / L) * inv_d;
    });
    return parts;
}

/// The two zero-order multiplier symbols expressing d_i u^j from omega^3 and
/// d3 u^3: curl symbol xi_i xi^perp_j / |xi_h|^2 and gradient symbol
/// -xi_i xi_j / |xi_h|^2, with xi^perp = (-xi_2, xi_1). Both vanish on the
/// k_h = 0 plane and are bounded by 1 in modulus elsewhere.
struct RieszPair {
    int i = 1, j = 1;

    double curl_symbol(int k1, int k2) const {
        const double kh2 = double(k1) * k1 + double(k2) * k2;
        if (kh2 == 0.0) return 0.0;
        const double xi = (i == 1) ? k1 : k2;
        const double xp = (j == 1) ? -double(k2) : double(k1);
        return xi * xp / kh2;
    }
    double grad_symbol(int k1, int k2) const {
        const double kh2 = double(k1) * k1 + double(k2) * k2;
        if (kh2 == 0.0) return 0.0;
        const double xi = (i == 1) ? k1 : k2;
        const double xj = (j == 1) ? k1 : k2;
        return -xi * xj / kh2;
    }
};

/// Applies one of the pair's symbols to a scalar field.
inline ScalarField riesz_apply_curl(const RieszPair& rp, const ScalarField& f) {
    ScalarField out = f;
    for_each_mode(f.grid(), [&](std::size_t idx, int k1, int k2, int k3) {
        (void)k3;
        out[idx] *= rp.curl_symbol(k1, k2);
    });
    return out;
}

inline ScalarField riesz_apply_grad(const RieszPair& rp, const ScalarField& f) {
    ScalarField out = f;
    for_each_mode(f.grid(), [&](std::size_t idx, int k1, int k2, int k3) {
        (void)k3;
        out[idx] *= rp.grad_symbol(k1, k2);
    });
    return out;
}

/// d_i u^j reconstructed from omega^3 and d3 u^3 on the k_h != 0 modes:
/// riesz_partial(i, j, vorticity3(u), d3 u^3) agrees with derivative(u^j, i)
/// there whenever u is divergence-free.
inline ScalarField riesz_partial(int i, int j, const ScalarField& w3, const ScalarField& d3u3) {
    if (i < 1 || i > 2 || j < 1 || j > 2)
        throw std::invalid_argument("riesz_partial indices must be in {1,2}");
    w3.check_same_grid(d3u3);
    const RieszPair rp{i, j};
    ScalarField out = w3;
    for_each_mode(w3.grid(), [&](std::size_t idx, int k1, int k2, int k3) {
        (void)k3;
        out[idx] = rp.curl_symbol(k1, k2) * w3[idx] + rp.grad_symbol(k1, k2) * d3u3[idx];
    });
    return out;
}

} // namespace lpns
