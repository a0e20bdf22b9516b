#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpns {

/// Periodic-box discretization of [0, 2*pi*L)^3.
///
/// Axes 1-2 span the horizontal plane, axis 3 is vertical. Each axis carries
/// n_i sample points and the integer wavenumber lattice {-n_i/2, ..., n_i/2-1}
/// in standard transform ordering (0, 1, ..., n/2-1, -n/2, ..., -1). Physical
/// wavenumbers are k/L.
class FourierGrid {
  public:
    FourierGrid(std::array<int, 3> n, double box_length)
        : n_(n), box_length_(box_length) {
        for (int a = 0; a < 3; ++a) {
            if (n_[a] % 2 != 0)
                throw std::invalid_argument("odd resolution (n[" + std::to_string(a) +
                                            "] = " + std::to_string(n_[a]) + ")");
            if (n_[a] < 8)
                throw std::invalid_argument("grid resolution too small (n[" + std::to_string(a) +
                                            "] = " + std::to_string(n_[a]) + ", need >= 8)");
        }
        if (!(box_length > 0.0))
            throw std::invalid_argument("box_length must be positive");
        for (int a = 0; a < 3; ++a) {
            wave_[a].resize(static_cast<std::size_t>(n_[a]));
            for (int i = 0; i < n_[a]; ++i)
                wave_[a][static_cast<std::size_t>(i)] = (i < n_[a] / 2) ? i : i - n_[a];
        }
    }

    const std::array<int, 3>& n() const { return n_; }
    int n(int axis) const { return n_[axis]; }
    double box_length() const { return box_length_; }

    std::size_t size() const {
        return static_cast<std::size_t>(n_[0]) * static_cast<std::size_t>(n_[1]) *
               static_cast<std::size_t>(n_[2]);
    }

    /// Integer wavenumber on `axis` for transform index i.
    int wavenumber(int axis, int i) const { return wave_[axis][static_cast<std::size_t>(i)]; }

    const std::vector<int>& wavenumbers(int axis) const { return wave_[axis]; }

    /// Flattened index, i1 slowest / i3 fastest (row-major).
    std::size_t index(int i1, int i2, int i3) const {
        return (static_cast<std::size_t>(i1) * n_[1] + static_cast<std::size_t>(i2)) * n_[2] +
               static_cast<std::size_t>(i3);
    }

    /// Physical sample coordinate on `axis`: x = 2*pi*L*i/n.
    double coord(int axis, int i) const {
        return 2.0 * pi() * box_length_ * static_cast<double>(i) / static_cast<double>(n_[axis]);
    }

    /// Volume of the box, (2*pi*L)^3.
    double volume() const {
        const double side = 2.0 * pi() * box_length_;
        return side * side * side;
    }

    /// Quadrature weight of one sample point, volume/N.
    double cell_volume() const { return volume() / static_cast<double>(size()); }

    bool operator==(const FourierGrid& o) const {
        return n_ == o.n_ && box_length_ == o.box_length_;
    }
    bool operator!=(const FourierGrid& o) const { return !(*this == o); }

    static constexpr double pi() { return 3.141592653589793238462643383279502884; }

  private:
    std::array<int, 3> n_;
    double box_length_;
    std::array<std::vector<int>, 3> wave_;
};

inline FourierGrid make_grid(std::array<int, 3> n, double box_length) {
    return FourierGrid(n, box_length);
}

inline FourierGrid make_grid(int n, double box_length) { return FourierGrid({n, n, n}, box_length); }

} // namespace lpns
