#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "lpns/dyadic.hpp"
#include "lpns/lebesgue.hpp"

namespace lpns {

/// Homogeneous Sobolev norm ((2 pi L)^3 sum_{k != 0} |k/L|^{2s} |c_k|^2)^{1/2}.
inline double sobolev(const ScalarField& f, double s) {
    const FourierGrid& g = f.grid();
    const double invL = 1.0 / g.box_length();
    double acc = 0.0;
    for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
        if (k1 == 0 && k2 == 0 && k3 == 0) return;
        const double r2 = (double(k1) * k1 + double(k2) * k2 + double(k3) * k3) * invL * invL;
        acc += std::pow(r2, s) * std::norm(f[idx]);
    });
    return std::sqrt(g.volume() * acc);
}

struct AnisoSobolevResult {
    double value = 0.0;
    bool degenerate_modes_dropped = false;
    double dropped_mass_fraction = 0.0; // |c|^2 mass removed / total |c|^2 mass
};

/// Anisotropic Sobolev norm with weight |xi_h|^{2t} |xi_v|^{2s}.
///
/// A zero-frequency plane contributes weight 0 when its exponent is positive;
/// when the exponent is negative those modes are dropped and flagged (the
/// homogeneous norm is a quotient, the flag keeps reports honest). Exponent 0
/// means weight 1 on the plane. The k = 0 mode is always excluded.
inline AnisoSobolevResult aniso_sobolev_detailed(const ScalarField& f, double t_h, double s_v) {
    const FourierGrid& g = f.grid();
    const double invL = 1.0 / g.box_length();
    AnisoSobolevResult res;
    double acc = 0.0, total_mass = 0.0, dropped = 0.0;
    for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
        const double mass = std::norm(f[idx]);
        total_mass += mass;
        if (k1 == 0 && k2 == 0 && k3 == 0) return;
        const double rh2 = (double(k1) * k1 + double(k2) * k2) * invL * invL;
        const double rv2 = double(k3) * k3 * invL * invL;
        double w = 1.0;
        bool drop = false;
        if (t_h != 0.0) {
            if (rh2 == 0.0) {
                if (t_h > 0.0) { w = 0.0; } else { drop = true; }
            } else {
                w *= std::pow(rh2, t_h);
            }
        }
        if (!drop && s_v != 0.0) {
            if (rv2 == 0.0) {
                if (s_v > 0.0) { w = 0.0; } else { drop = true; }
            } else {
                w *= std::pow(rv2, s_v);
            }
        }
        if (drop) {
            if (mass > 0.0) {
                res.degenerate_modes_dropped = true;
                dropped += mass;
            }
            return;
        }
        acc += w * mass;
    });
    if (total_mass > 0.0) res.dropped_mass_fraction = dropped / total_mass;
    res.value = std::sqrt(g.volume() * acc);
    return res;
}

inline double aniso_sobolev(const ScalarField& f, double t_h, double s_v) {
    return aniso_sobolev_detailed(f, t_h, s_v).value;
}

namespace detail {

/// l^r reduction of nonnegative sequence entries; r = inf is the sup and an
/// empty/zero sequence yields 0.
struct LrAccumulator {
    explicit LrAccumulator(double r) : r_(r) {}
    void add(double v, int index) {
        if (r_ == kInf) {
            if (v > max_) {
                max_ = v;
                argmax_ = index;
            }
        } else {
            sum_ += std::pow(v, r_);
        }
    }
    double value() const { return r_ == kInf ? max_ : std::pow(sum_, 1.0 / r_); }
    std::optional<int> argmax() const {
        return r_ == kInf && max_ > 0.0 ? std::optional<int>(argmax_) : std::nullopt;
    }

  private:
    double r_;
    double max_ = 0.0;
    double sum_ = 0.0;
    int argmax_ = 0;
};

} // namespace detail

struct BesovResult {
    double value = 0.0;
    std::optional<int> attaining_index; // set for r = inf when the sup is positive
};

/// Homogeneous isotropic Besov norm: l^r over active iso indices j of
/// 2^{js} ||Delta_j f||_{L^p}.
inline BesovResult besov_detailed(const DyadicFilterBank& bank, const ScalarField& f, double s,
                                  double p, double r) {
    check_exponent(p);
    check_exponent(r);
    detail::LrAccumulator acc(r);
    for (int j = bank.j_min(Kind::Isotropic); j <= bank.j_max(Kind::Isotropic); ++j) {
        const ScalarField bl = block(bank, f, Kind::Isotropic, j);
        double mx = 0.0;
        for (const auto& c : bl.coeffs()) mx = std::max(mx, std::norm(c));
        if (mx == 0.0) continue;
        acc.add(std::pow(2.0, j * s) * lp_norm(bl, p), j);
    }
    BesovResult res;
    res.value = acc.value();
    res.attaining_index = acc.argmax();
    return res;
}

inline double besov(const DyadicFilterBank& bank, const ScalarField& f, double s, double p,
                    double r) {
    return besov_detailed(bank, f, s, p, r).value;
}

struct AnisoBesovResult {
    double value = 0.0;
    std::optional<std::pair<int, int>> attaining_index; // (k, j) attaining the outer sup
};

/// Anisotropic Besov norm:
/// || 2^{kt} 2^{js} ||Delta^h_k Delta^v_j f||_{L^{p1}_h L^{p2}_v} ||_{l^{r1}_k (l^{r2}_j)}.
inline AnisoBesovResult aniso_besov_detailed(const DyadicFilterBank& bank, const ScalarField& f,
                                             double t_h, double s_v, double p1, double r1,
                                             double p2, double r2) {
    check_exponent(p1);
    check_exponent(r1);
    check_exponent(p2);
    check_exponent(r2);
    detail::LrAccumulator outer(r1);
    std::pair<int, int> arg{0, 0};
    double best_outer = -1.0;
    for (int k = bank.j_min(Kind::Horizontal); k <= bank.j_max(Kind::Horizontal); ++k) {
        const ScalarField hf = block(bank, f, Kind::Horizontal, k);
        double hmax = 0.0;
        for (const auto& c : hf.coeffs()) hmax = std::max(hmax, std::norm(c));
        detail::LrAccumulator inner(r2);
        if (hmax > 0.0) {
            for (int j = bank.j_min(Kind::Vertical); j <= bank.j_max(Kind::Vertical); ++j) {
                const ScalarField bl = block(bank, hf, Kind::Vertical, j);
                double mx = 0.0;
                for (const auto& c : bl.coeffs()) mx = std::max(mx, std::norm(c));
                if (mx == 0.0) continue;
                const double v = std::pow(2.0, k * t_h) * std::pow(2.0, j * s_v) *
                                 mixed_lebesgue_norm(bl, AxisGroup::Horizontal, p1, p2);
                inner.add(v, j);
            }
        }
        const double iv = inner.value();
        if (iv > best_outer) {
            best_outer = iv;
            arg = {k, inner.argmax() ? *inner.argmax() : 0};
        }
        outer.add(iv, k);
    }
    AnisoBesovResult res;
    res.value = outer.value();
    if (r1 == kInf && res.value > 0.0) res.attaining_index = arg;
    return res;
}

inline double aniso_besov(const DyadicFilterBank& bank, const ScalarField& f, double t_h,
                          double s_v, double p1, double r1, double p2, double r2) {
    return aniso_besov_detailed(bank, f, t_h, s_v, p1, r1, p2, r2).value;
}

enum class LogDirection { Horizontal, Vertical, Min };

/// Log-weighted homogeneous H^{1/2} norm:
/// ((2 pi L)^3 sum_{k != 0} |k/L| log(E w(k) + e) |c_k|^2)^{1/2}
/// with w = |k_h|/L, |k_3|/L or min of the two (natural log; weight exactly 1
/// where w = 0).
inline double log_half(const ScalarField& f, LogDirection dir, double E) {
    if (!(E > 0.0)) throw std::invalid_argument("log-weight parameter E must be positive");
    const FourierGrid& g = f.grid();
    const double invL = 1.0 / g.box_length();
    double acc = 0.0;
    for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
        if (k1 == 0 && k2 == 0 && k3 == 0) return;
        const double rh = std::sqrt(double(k1) * k1 + double(k2) * k2) * invL;
        const double rv = std::abs(k3) * invL;
        const double r = std::sqrt(double(k1) * k1 + double(k2) * k2 + double(k3) * k3) * invL;
        double w;
        switch (dir) {
            case LogDirection::Horizontal: w = rh; break;
            case LogDirection::Vertical: w = rv; break;
            default: w = std::min(rh, rv); break;
        }
        acc += r * std::log(E * w + std::exp(1.0)) * std::norm(f[idx]);
    });
    return std::sqrt(g.volume() * acc);
}

/// Splits f by dominant direction: f_h keeps modes with |k_3| <= |k_h|,
/// f_v keeps |k_h| < |k_3|; f_h + f_v = f exactly.
inline std::pair<ScalarField, ScalarField> dominant_split(const ScalarField& f) {
    const FourierGrid& g = f.grid();
    ScalarField fh = f;
    ScalarField fv = f;
    for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
        const double rh2 = double(k1) * k1 + double(k2) * k2;
        const double rv2 = double(k3) * k3;
        if (rv2 <= rh2)
            fv[idx] = 0.0;
        else
            fh[idx] = 0.0;
    });
    return {std::move(fh), std::move(fv)};
}

} // namespace lpns
