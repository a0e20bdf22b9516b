#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "lpns/field.hpp"

namespace lpns {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class AxisGroup { Horizontal, Vertical };

inline void check_exponent(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("Lebesgue exponent must be in [1, inf]");
}

/// L^p norm of already-transformed physical samples.
inline double lp_norm_samples(const FourierGrid& g, const std::vector<double>& s, double p) {
    check_exponent(p);
    if (p == kInf) {
        double m = 0.0;
        for (double v : s) m = std::max(m, std::abs(v));
        return m;
    }
    const double w = g.cell_volume();
    double acc = 0.0;
    if (p == 2.0) {
        for (double v : s) acc += v * v;
    } else if (p == 1.0) {
        for (double v : s) acc += std::abs(v);
    } else {
        for (double v : s) acc += std::pow(std::abs(v), p);
    }
    return std::pow(w * acc, 1.0 / p);
}

/// L^p norm over the box. Finite p uses the (2 pi L / n)-per-axis quadrature
/// weight; p = inf is the max over grid samples.
inline double lp_norm(const ScalarField& f, double p) {
    return lp_norm_samples(f.grid(), transform_inverse(f), p);
}

/// L^2 norm straight from the coefficients (Parseval).
inline double l2_norm(const ScalarField& f) {
    double acc = 0.0;
    for (const auto& c : f.coeffs()) acc += std::norm(c);
    return std::sqrt(f.grid().volume() * acc);
}

inline double l2_norm(const VectorField& u) {
    double acc = 0.0;
    for (int i = 1; i <= 3; ++i) {
        const double v = l2_norm(u.comp(i));
        acc += v * v;
    }
    return std::sqrt(acc);
}

/// Real L^2 pairing (f | g), evaluated as the Parseval sum.
inline double inner_product_l2(const ScalarField& f, const ScalarField& g) {
    f.check_same_grid(g);
    std::complex<double> acc(0.0, 0.0);
    const auto& a = f.coeffs();
    const auto& b = g.coeffs();
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * std::conj(b[i]);
    return f.grid().volume() * acc.real();
}

namespace detail {

inline double reduce_lp(std::vector<double>& vals, double p, double weight) {
    if (p == kInf) {
        double m = 0.0;
        for (double v : vals) m = std::max(m, v);
        return m;
    }
    double acc = 0.0;
    if (p == 2.0) {
        for (double v : vals) acc += v * v;
    } else if (p == 1.0) {
        for (double v : vals) acc += v;
    } else {
        for (double v : vals) acc += std::pow(v, p);
    }
    return std::pow(weight * acc, 1.0 / p);
}

} // namespace detail

/// Mixed Lebesgue norm of already-transformed physical samples.
inline double mixed_lebesgue_norm_samples(const FourierGrid& g, const std::vector<double>& s,
                                          AxisGroup outer, double p_outer, double p_inner) {
    check_exponent(p_outer);
    check_exponent(p_inner);
    const int n1 = g.n(0), n2 = g.n(1), n3 = g.n(2);
    const double dx1 = 2.0 * FourierGrid::pi() * g.box_length() / n1;
    const double dx2 = 2.0 * FourierGrid::pi() * g.box_length() / n2;
    const double dx3 = 2.0 * FourierGrid::pi() * g.box_length() / n3;

    if (outer == AxisGroup::Vertical) {
        std::vector<double> inner(static_cast<std::size_t>(n3), 0.0);
        for (int i3 = 0; i3 < n3; ++i3) {
            std::vector<double> plane;
            plane.reserve(static_cast<std::size_t>(n1) * n2);
            for (int i1 = 0; i1 < n1; ++i1)
                for (int i2 = 0; i2 < n2; ++i2)
                    plane.push_back(std::abs(s[g.index(i1, i2, i3)]));
            inner[static_cast<std::size_t>(i3)] = detail::reduce_lp(plane, p_inner, dx1 * dx2);
        }
        return detail::reduce_lp(inner, p_outer, dx3);
    }

    std::vector<double> inner;
    inner.reserve(static_cast<std::size_t>(n1) * n2);
    for (int i1 = 0; i1 < n1; ++i1)
        for (int i2 = 0; i2 < n2; ++i2) {
            std::vector<double> line;
            line.reserve(static_cast<std::size_t>(n3));
            for (int i3 = 0; i3 < n3; ++i3) line.push_back(std::abs(s[g.index(i1, i2, i3)]));
            inner.push_back(detail::reduce_lp(line, p_inner, dx3));
        }
    return detail::reduce_lp(inner, p_outer, dx1 * dx2);
}

/// Mixed Lebesgue norm: the inner norm runs over the complementary axis group
/// at each outer point, then the outer norm over the outer group.
///
/// outer = Vertical   -> L^{p_outer}_v (L^{p_inner}_h), outer points are x3;
/// outer = Horizontal -> L^{p_outer}_h (L^{p_inner}_v), outer points are (x1,x2).
inline double mixed_lebesgue_norm(const ScalarField& f, AxisGroup outer, double p_outer,
                                  double p_inner) {
    return mixed_lebesgue_norm_samples(f.grid(), transform_inverse(f), outer, p_outer, p_inner);
}

} // namespace lpns
