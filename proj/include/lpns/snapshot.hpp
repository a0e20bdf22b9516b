#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpns/field.hpp"

namespace lpns {

static_assert(std::endian::native == std::endian::little,
              "LPNS1 snapshots are little-endian; big-endian hosts are unsupported");

/// LPNS1 binary snapshot format (little-endian):
///   magic "LPNS1" (5 bytes)
///   n1, n2, n3            int64
///   box_length            float64
///   component count       int64 (1 = scalar, 3 = velocity)
///   per component, coefficients as interleaved (re, im) float64 pairs in
///   lattice order (i1 slowest, i3 fastest).
namespace snapshot {

inline constexpr char kMagic[5] = {'L', 'P', 'N', 'S', '1'};

namespace detail {

inline void write_i64(std::ostream& os, std::int64_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
inline void write_f64(std::ostream& os, double v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
inline std::int64_t read_i64(std::istream& is) {
    std::int64_t v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}
inline double read_f64(std::istream& is) {
    double v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}

inline void write_header(std::ostream& os, const FourierGrid& g, std::int64_t ncomp) {
    os.write(kMagic, sizeof(kMagic));
    for (int a = 0; a < 3; ++a) write_i64(os, g.n(a));
    write_f64(os, g.box_length());
    write_i64(os, ncomp);
}

inline void write_coeffs(std::ostream& os, const ScalarField& f) {
    os.write(reinterpret_cast<const char*>(f.coeffs().data()),
             static_cast<std::streamsize>(f.coeffs().size() * sizeof(std::complex<double>)));
}

inline void read_coeffs(std::istream& is, ScalarField& f) {
    is.read(reinterpret_cast<char*>(f.coeffs().data()),
            static_cast<std::streamsize>(f.coeffs().size() * sizeof(std::complex<double>)));
}

struct Header {
    std::array<int, 3> n;
    double box_length;
    std::int64_t ncomp;
};

inline Header read_header(std::istream& is, const std::string& path) {
    char magic[5];
    is.read(magic, sizeof(magic));
    if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error(path + ": not an LPNS1 snapshot");
    Header h{};
    for (int a = 0; a < 3; ++a) h.n[a] = static_cast<int>(read_i64(is));
    h.box_length = read_f64(is);
    h.ncomp = read_i64(is);
    if (!is) throw std::runtime_error(path + ": truncated LPNS1 header");
    return h;
}

} // namespace detail

/// Atomic write (temp file + rename) of a velocity snapshot.
inline void write_vector(const std::filesystem::path& path, const VectorField& u) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp + " for writing");
        detail::write_header(os, u.grid(), 3);
        for (int c = 1; c <= 3; ++c) detail::write_coeffs(os, u.comp(c));
        if (!os) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

inline void write_scalar(const std::filesystem::path& path, const ScalarField& f) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp + " for writing");
        detail::write_header(os, f.grid(), 1);
        detail::write_coeffs(os, f);
        if (!os) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

/// Reads a 3-component snapshot; the grid must match the file header.
inline VectorField read_vector(const std::filesystem::path& path, const FourierGrid& grid) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path.string());
    const auto h = detail::read_header(is, path.string());
    if (h.ncomp != 3) throw std::runtime_error(path.string() + ": expected 3 components");
    if (h.n != grid.n() || h.box_length != grid.box_length())
        throw std::runtime_error(path.string() + ": grid mismatch");
    VectorField u(grid);
    for (int c = 1; c <= 3; ++c) detail::read_coeffs(is, u.comp(c));
    if (!is) throw std::runtime_error(path.string() + ": truncated coefficient data");
    return u;
}

/// Reads header only (to discover the grid).
inline detail::Header probe(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path.string());
    return detail::read_header(is, path.string());
}

} // namespace snapshot
} // namespace lpns
