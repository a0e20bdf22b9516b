#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "lpns/fft.hpp"
#include "lpns/grid.hpp"

namespace lpns {

/// A real scalar on the grid, stored by its complex spectral coefficients.
///
/// The spectral representation is canonical: coeffs(k) is the mean-per-mode
/// coefficient of exp(i (k/L).x), i.e. f(x) = sum_k coeffs(k) exp(i (k/L).x),
/// which makes coeffs(0) the spatial mean and gives Parseval in the form
/// ||f||_{L2}^2 = (2 pi L)^3 * sum_k |coeffs(k)|^2.
/// Real fields satisfy coeffs(-k) = conj(coeffs(k)).
class ScalarField {
  public:
    explicit ScalarField(const FourierGrid& grid)
        : grid_(&grid), coeffs_(grid.size(), std::complex<double>(0.0, 0.0)) {}

    ScalarField(const FourierGrid& grid, std::vector<std::complex<double>> coeffs)
        : grid_(&grid), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != grid.size())
            throw std::invalid_argument("coefficient count does not match grid");
    }

    const FourierGrid& grid() const { return *grid_; }

    std::complex<double>& operator[](std::size_t i) { return coeffs_[i]; }
    const std::complex<double>& operator[](std::size_t i) const { return coeffs_[i]; }

    std::complex<double>& at(int i1, int i2, int i3) { return coeffs_[grid_->index(i1, i2, i3)]; }
    const std::complex<double>& at(int i1, int i2, int i3) const {
        return coeffs_[grid_->index(i1, i2, i3)];
    }

    std::vector<std::complex<double>>& coeffs() { return coeffs_; }
    const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }

    std::complex<double> mean() const { return coeffs_[0]; }

    ScalarField& operator+=(const ScalarField& o) {
        check_same_grid(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    ScalarField& operator-=(const ScalarField& o) {
        check_same_grid(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }
    ScalarField& operator*=(double a) {
        for (auto& c : coeffs_) c *= a;
        return *this;
    }

    friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
    friend ScalarField operator*(double a, ScalarField f) { return f *= a; }

    void check_same_grid(const ScalarField& o) const {
        if (*grid_ != *o.grid_) throw std::invalid_argument("grid mismatch");
    }

  private:
    const FourierGrid* grid_;
    std::vector<std::complex<double>> coeffs_;
};

/// Forward transform: physical samples (row-major, i1 slowest) -> ScalarField.
inline ScalarField transform_forward(const FourierGrid& grid, const std::vector<double>& samples) {
    if (samples.size() != grid.size())
        throw std::invalid_argument("sample count does not match grid");
    std::vector<std::complex<double>> buf(grid.size());
    for (std::size_t i = 0; i < samples.size(); ++i) buf[i] = samples[i];
    ScalarField f(grid);
    fft::forward(grid.n(), buf.data(), f.coeffs().data());
    const double scale = 1.0 / static_cast<double>(grid.size());
    for (auto& c : f.coeffs()) c *= scale;
    return f;
}

/// Inverse transform to complex physical samples (no realness assumption).
inline std::vector<std::complex<double>> transform_inverse_complex(const ScalarField& f) {
    std::vector<std::complex<double>> out(f.grid().size());
    fft::backward(f.grid().n(), f.coeffs().data(), out.data());
    return out;
}

/// Inverse transform of a real field to physical samples.
inline std::vector<double> transform_inverse(const ScalarField& f) {
    auto buf = transform_inverse_complex(f);
    std::vector<double> out(buf.size());
    for (std::size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real();
    return out;
}

/// Builds a field by sampling fn(x1,x2,x3) on the grid.
inline ScalarField sample_field(const FourierGrid& grid,
                                const std::function<double(double, double, double)>& fn) {
    std::vector<double> s(grid.size());
    for (int i1 = 0; i1 < grid.n(0); ++i1)
        for (int i2 = 0; i2 < grid.n(1); ++i2)
            for (int i3 = 0; i3 < grid.n(2); ++i3)
                s[grid.index(i1, i2, i3)] = fn(grid.coord(0, i1), grid.coord(1, i2), grid.coord(2, i3));
    return transform_forward(grid, s);
}

/// Applies a spectral multiplier m(k1,k2,k3) in place over the whole lattice.
template <typename Fn>
inline void for_each_mode(const FourierGrid& grid, Fn&& fn) {
    std::size_t idx = 0;
    for (int i1 = 0; i1 < grid.n(0); ++i1) {
        const int k1 = grid.wavenumber(0, i1);
        for (int i2 = 0; i2 < grid.n(1); ++i2) {
            const int k2 = grid.wavenumber(1, i2);
            for (int i3 = 0; i3 < grid.n(2); ++i3, ++idx) {
                const int k3 = grid.wavenumber(2, i3);
                fn(idx, k1, k2, k3);
            }
        }
    }
}

/// d^order/dx_axis^order as a spectral multiplier (i*k/L)^order.
///
/// The Nyquist mode k = -n/2 has no conjugate partner, so odd-order
/// derivatives zero it; even orders keep it (the symbol is real there).
inline ScalarField derivative(const ScalarField& f, int axis, int order = 1) {
    if (axis < 1 || axis > 3) throw std::invalid_argument("axis must be 1, 2 or 3");
    if (order < 1) throw std::invalid_argument("derivative order must be >= 1");
    const FourierGrid& g = f.grid();
    ScalarField out = f;
    const double invL = 1.0 / g.box_length();
    const int a = axis - 1;
    const int nyq = -g.n(a) / 2;
    for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
        const int k = (a == 0) ? k1 : (a == 1) ? k2 : k3;
        if (k == nyq && order % 2 != 0) {
            out[idx] = 0.0;
            return;
        }
        const std::complex<double> sym = std::pow(std::complex<double>(0.0, k * invL), order);
        out[idx] *= sym;
    });
    return out;
}

/// Max deviation from Hermitian symmetry, relative to the largest coefficient.
inline double hermitian_defect(const ScalarField& f) {
    const FourierGrid& g = f.grid();
    double max_abs = 0.0;
    for (const auto& c : f.coeffs()) max_abs = std::max(max_abs, std::abs(c));
    if (max_abs == 0.0) return 0.0;
    double defect = 0.0;
    for (int i1 = 0; i1 < g.n(0); ++i1) {
        const int j1 = (g.n(0) - i1) % g.n(0);
        for (int i2 = 0; i2 < g.n(1); ++i2) {
            const int j2 = (g.n(1) - i2) % g.n(1);
            for (int i3 = 0; i3 < g.n(2); ++i3) {
                const int j3 = (g.n(2) - i3) % g.n(2);
                const auto d = f.at(i1, i2, i3) - std::conj(f.at(j1, j2, j3));
                defect = std::max(defect, std::abs(d));
            }
        }
    }
    return defect / max_abs;
}

/// Three scalar components u1, u2, u3 sharing one grid.
class VectorField {
  public:
    explicit VectorField(const FourierGrid& grid) : comps_{ScalarField(grid), ScalarField(grid), ScalarField(grid)} {}

    VectorField(ScalarField u1, ScalarField u2, ScalarField u3)
        : comps_{std::move(u1), std::move(u2), std::move(u3)} {
        comps_[0].check_same_grid(comps_[1]);
        comps_[0].check_same_grid(comps_[2]);
    }

    const FourierGrid& grid() const { return comps_[0].grid(); }

    /// 1-based component access, matching u^1, u^2, u^3.
    ScalarField& comp(int i) { return comps_[static_cast<std::size_t>(i - 1)]; }
    const ScalarField& comp(int i) const { return comps_[static_cast<std::size_t>(i - 1)]; }

    VectorField& operator+=(const VectorField& o) {
        for (int i = 0; i < 3; ++i) comps_[i] += o.comps_[i];
        return *this;
    }
    VectorField& operator-=(const VectorField& o) {
        for (int i = 0; i < 3; ++i) comps_[i] -= o.comps_[i];
        return *this;
    }
    VectorField& operator*=(double a) {
        for (int i = 0; i < 3; ++i) comps_[i] *= a;
        return *this;
    }
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator*(double a, VectorField f) { return f *= a; }

  private:
    std::array<ScalarField, 3> comps_;
};

} // namespace lpns
