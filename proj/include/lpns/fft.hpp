#pragma once

#include <array>
#include <complex>
#include <cstring>
#include <map>
#include <mutex>
#include <vector>

#include <fftw3.h>

namespace lpns {
namespace fft {

/// Thin synchronized wrapper around FFTW c2c plans.
///
/// Plans are cached per (shape, direction) and executed on plan-owned aligned
/// scratch under a lock, so callers may invoke transforms concurrently from
/// any thread without touching FFTW's (non-thread-safe) planner.
namespace detail {

struct PlanEntry {
    fftw_plan plan = nullptr;
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    std::size_t size = 0;

    ~PlanEntry() {
        if (plan) fftw_destroy_plan(plan);
        if (in) fftw_free(in);
        if (out) fftw_free(out);
    }
    PlanEntry() = default;
    PlanEntry(const PlanEntry&) = delete;
    PlanEntry& operator=(const PlanEntry&) = delete;
};

using PlanKey = std::array<int, 5>; // n1, n2, n3, sign, kind (0 = 3d, 1 = axis3 batch)

inline std::mutex& mutex() {
    static std::mutex m;
    return m;
}

inline std::map<PlanKey, PlanEntry>& cache() {
    static std::map<PlanKey, PlanEntry> c;
    return c;
}

inline PlanEntry& get_plan(const std::array<int, 3>& n, int sign, int kind) {
    PlanKey key{n[0], n[1], n[2], sign, kind};
    auto& c = cache();
    auto it = c.find(key);
    if (it != c.end()) return it->second;

    PlanEntry& e = c[key];
    e.size = static_cast<std::size_t>(n[0]) * n[1] * n[2];
    e.in = fftw_alloc_complex(e.size);
    e.out = fftw_alloc_complex(e.size);
    // FFTW_ESTIMATE keeps plan selection deterministic, which byte-identical
    // report output depends on; FFTW_MEASURE would race the clock.
    if (kind == 0) {
        e.plan = fftw_plan_dft_3d(n[0], n[1], n[2], e.in, e.out, sign, FFTW_ESTIMATE);
    } else {
        // batched 1d transform along the contiguous (vertical) axis
        int n3 = n[2];
        int howmany = n[0] * n[1];
        e.plan = fftw_plan_many_dft(1, &n3, howmany, e.in, nullptr, 1, n3, e.out, nullptr, 1, n3,
                                    sign, FFTW_ESTIMATE);
    }
    return e;
}

inline void execute(const std::array<int, 3>& n, int sign, int kind,
                    const std::complex<double>* in, std::complex<double>* out) {
    std::lock_guard<std::mutex> lock(mutex());
    PlanEntry& e = get_plan(n, sign, kind);
    std::memcpy(static_cast<void*>(e.in), static_cast<const void*>(in),
                e.size * sizeof(fftw_complex));
    fftw_execute(e.plan);
    std::memcpy(static_cast<void*>(out), static_cast<const void*>(e.out),
                e.size * sizeof(fftw_complex));
}

} // namespace detail

/// Unnormalized forward DFT, exp(-i k.x) convention.
inline void forward(const std::array<int, 3>& n, const std::complex<double>* in,
                    std::complex<double>* out) {
    detail::execute(n, FFTW_FORWARD, 0, in, out);
}

/// Unnormalized backward DFT, exp(+i k.x) convention.
inline void backward(const std::array<int, 3>& n, const std::complex<double>* in,
                     std::complex<double>* out) {
    detail::execute(n, FFTW_BACKWARD, 0, in, out);
}

/// Unnormalized backward DFT along axis 3 only (batched over the h-plane).
inline void backward_axis3(const std::array<int, 3>& n, const std::complex<double>* in,
                           std::complex<double>* out) {
    detail::execute(n, FFTW_BACKWARD, 1, in, out);
}

} // namespace fft
} // namespace lpns
