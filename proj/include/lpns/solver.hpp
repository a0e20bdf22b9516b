#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "lpns/random_fields.hpp"

namespace lpns {

/// Taylor-Green initial data A (sin x1 cos x2 cos x3, -cos x1 sin x2 cos x3, 0);
/// divergence-free exactly, band-limited to |k_a| <= 1.
inline VectorField taylor_green(const FourierGrid& grid, double amplitude) {
    if (!std::isfinite(amplitude)) throw std::invalid_argument("amplitude must be finite");
    ScalarField u1 = sample_field(grid, [&](double x, double y, double z) {
        return amplitude * std::sin(x) * std::cos(y) * std::cos(z);
    });
    ScalarField u2 = sample_field(grid, [&](double x, double y, double z) {
        return -amplitude * std::cos(x) * std::sin(y) * std::cos(z);
    });
    return VectorField(std::move(u1), std::move(u2), ScalarField(grid));
}

/// Convective-form nonlinear term -P(u . grad u) with 2/3-dealiased products.
/// Optionally reports max |u_c(x)| over components and samples (for CFL).
inline VectorField nonlinear_term(const VectorField& u, double* max_abs_u = nullptr) {
    const FourierGrid& g = u.grid();
    const VectorField du = dealias(u);

    std::array<std::vector<double>, 3> vel;
    for (int c = 1; c <= 3; ++c) vel[c - 1] = transform_inverse(du.comp(c));
    if (max_abs_u) {
        double m = 0.0;
        for (const auto& comp : vel)
            for (double v : comp) m = std::max(m, std::abs(v));
        *max_abs_u = m;
    }

    VectorField out(g);
    std::vector<double> acc(g.size());
    for (int j = 1; j <= 3; ++j) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (int i = 1; i <= 3; ++i) {
            const auto dij = transform_inverse(derivative(du.comp(j), i));
            const auto& ui = vel[i - 1];
            for (std::size_t x = 0; x < acc.size(); ++x) acc[x] += ui[x] * dij[x];
        }
        out.comp(j) = dealias(transform_forward(g, acc));
    }
    out = leray_project(out);
    out *= -1.0;
    return out;
}

struct StepScalars {
    double t = 0.0;
    double energy = 0.0;    // ||u||_{L2}^2
    double enstrophy = 0.0; // ||grad u||_{L2}^2
    double max_div = 0.0;   // relative divergence defect
    double dt = 0.0;
};

inline double energy(const VectorField& u) {
    const double n = l2_norm(u);
    return n * n;
}

inline double grad_l2_sq(const VectorField& u) {
    const FourierGrid& g = u.grid();
    const double invL2 = 1.0 / (g.box_length() * g.box_length());
    double acc = 0.0;
    for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
        const double k2n = (double(k1) * k1 + double(k2) * k2 + double(k3) * k3) * invL2;
        acc += k2n * (std::norm(u.comp(1)[idx]) + std::norm(u.comp(2)[idx]) +
                      std::norm(u.comp(3)[idx]));
    });
    return g.volume() * acc;
}

/// One integrating-factor RK4 step: the viscous part is integrated exactly by
/// exp(-nu |k/L|^2 dt) factors, classical RK4 handles the projected nonlinear
/// term, and the result is re-projected. Throws on CFL violation
/// (dt > cfl_safety * dx_min / max|u|), reporting the offending max|u|.
class Stepper {
  public:
    Stepper(const FourierGrid& grid, double nu, double dt, double cfl_safety = 0.5)
        : grid_(&grid), nu_(nu), dt_(dt), cfl_safety_(cfl_safety) {
        if (!(nu >= 0.0)) throw std::invalid_argument("viscosity must be nonnegative");
        if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
        if (!(cfl_safety > 0.0 && cfl_safety <= 1.0))
            throw std::invalid_argument("cfl_safety must be in (0,1]");
        half_.resize(grid.size());
        full_.resize(grid.size());
        const double invL2 = 1.0 / (grid.box_length() * grid.box_length());
        for_each_mode(grid, [&](std::size_t idx, int k1, int k2, int k3) {
            const double k2n = (double(k1) * k1 + double(k2) * k2 + double(k3) * k3) * invL2;
            half_[idx] = std::exp(-nu * k2n * dt / 2.0);
            full_[idx] = half_[idx] * half_[idx];
        });
        double dx = 2.0 * FourierGrid::pi() * grid.box_length() / grid.n(0);
        for (int a = 1; a < 3; ++a)
            dx = std::min(dx, 2.0 * FourierGrid::pi() * grid.box_length() / grid.n(a));
        dx_min_ = dx;
    }

    double dt() const { return dt_; }
    double nu() const { return nu_; }

    VectorField step(const VectorField& u) const {
        double max_u = 0.0;
        VectorField k1 = nonlinear_term(u, &max_u);
        if (max_u > 0.0 && dt_ > cfl_safety_ * dx_min_ / max_u) {
            std::ostringstream msg;
            msg << "CFL violation: dt = " << dt_ << " exceeds " << cfl_safety_ << " * " << dx_min_
                << " / max|u| with max|u| = " << max_u;
            throw std::runtime_error(msg.str());
        }

        // w' = N(exp(tL) w) in the integrating-factor variable w = exp(-tL) u
        VectorField s2 = apply(half_, u + (dt_ / 2.0) * k1);
        VectorField k2 = nonlinear_term(s2);
        VectorField s3 = apply(half_, u) + (dt_ / 2.0) * k2;
        VectorField k3 = nonlinear_term(s3);
        VectorField s4 = apply(full_, u) + dt_ * apply(half_, k3);
        VectorField k4 = nonlinear_term(s4);

        VectorField out = apply(full_, u);
        out += (dt_ / 6.0) * apply(full_, k1);
        out += (dt_ / 3.0) * apply(half_, k2 + k3);
        out += (dt_ / 6.0) * k4;
        return leray_project(out);
    }

  private:
    VectorField apply(const std::vector<double>& factor, VectorField u) const {
        for (int c = 1; c <= 3; ++c) {
            auto& coeffs = u.comp(c).coeffs();
            for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] *= factor[i];
        }
        return u;
    }

    const FourierGrid* grid_;
    double nu_;
    double dt_;
    double cfl_safety_;
    double dx_min_;
    std::vector<double> half_, full_;
};

/// A simulated trajectory: per-step scalars plus snapshots every
/// output_stride steps (step 0 and the final step always included).
struct Trajectory {
    std::vector<double> snapshot_times;
    std::vector<VectorField> snapshots;
    std::vector<StepScalars> scalars;
};

struct RunParams {
    double nu = 1.0;
    double dt = 1e-2;
    double t_end = 1.0;
    int output_stride = 1;
    double cfl_safety = 0.5;
};

inline Trajectory run_simulation(const VectorField& u0, const RunParams& p) {
    if (!(p.t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
    if (p.output_stride < 1) throw std::invalid_argument("output_stride must be >= 1");
    Stepper stepper(u0.grid(), p.nu, p.dt, p.cfl_safety);
    const auto n_steps = static_cast<long>(std::llround(p.t_end / p.dt));
    if (n_steps < 1) throw std::invalid_argument("t_end shorter than one step");

    Trajectory traj;
    VectorField u = leray_project(u0);
    auto record = [&](long step) {
        const double t = static_cast<double>(step) * p.dt;
        traj.scalars.push_back({t, energy(u), grad_l2_sq(u), divergence_defect(u), p.dt});
        if (step % p.output_stride == 0 || step == n_steps) {
            traj.snapshot_times.push_back(t);
            traj.snapshots.push_back(u);
        }
    };
    record(0);
    for (long s = 1; s <= n_steps; ++s) {
        u = stepper.step(u);
        record(s);
    }
    return traj;
}

/// Energy-budget residual series: res(t) = ||u0||^2 - ||u(t)||^2
/// - 2 nu int_0^t ||grad u||^2 (trapezoidal), one entry per recorded step.
struct EnergyReport {
    std::vector<double> times;
    std::vector<double> energy;
    std::vector<double> dissipation_integral;
    std::vector<double> residual;
};

inline EnergyReport energy_report(const Trajectory& traj, double nu) {
    EnergyReport rep;
    const auto& sc = traj.scalars;
    if (sc.empty()) return rep;
    const double e0 = sc.front().energy;
    double integral = 0.0;
    for (std::size_t i = 0; i < sc.size(); ++i) {
        if (i > 0)
            integral += 0.5 * (sc[i].enstrophy + sc[i - 1].enstrophy) * (sc[i].t - sc[i - 1].t);
        rep.times.push_back(sc[i].t);
        rep.energy.push_back(sc[i].energy);
        rep.dissipation_integral.push_back(integral);
        rep.residual.push_back(e0 - sc[i].energy - 2.0 * nu * integral);
    }
    return rep;
}

/// The horizontal-gradient energy budget: testing against
/// d/dt ||grad_h u||^2/2 = -||grad_h u||_{H1}^2 + E1 + E2 + E3 + E4.
///
/// E1..E4 are the four trilinear families produced by pairing u.grad u with
/// -Delta_h u; J[i][l] = integral of d_i u^3 d_3 u^l d_i u^l for (i,l) in
/// {1,2}^2, so E3 = -(J11 + J12 + J21 + J22). All trilinear integrals are
/// exact dealiased quadratures.
struct GradHBudget {
    double gradh_l2_sq = 0.0;
    double gradh_h1_sq = 0.0;
    double e1 = 0.0, e2 = 0.0, e3 = 0.0, e4 = 0.0;
    double j[2][2] = {{0.0, 0.0}, {0.0, 0.0}};

    double rhs() const { return -gradh_h1_sq + e1 + e2 + e3 + e4; }
};

inline GradHBudget gradh_budget(const VectorField& u) {
    const FourierGrid& g = u.grid();
    const VectorField du = dealias(u);

    // physical derivative tables d[i-1][m-1] = d_i u^m for i in {1,2,3}
    std::array<std::array<std::vector<double>, 3>, 3> d;
    for (int i = 1; i <= 3; ++i)
        for (int m = 1; m <= 3; ++m) d[i - 1][m - 1] = transform_inverse(derivative(du.comp(m), i));

    const double w = g.cell_volume();
    auto tri = [&](const std::vector<double>& a, const std::vector<double>& b,
                   const std::vector<double>& c) {
        double acc = 0.0;
        for (std::size_t x = 0; x < a.size(); ++x) acc += a[x] * b[x] * c[x];
        return w * acc;
    };

    GradHBudget out;
    const double invL2 = 1.0 / (g.box_length() * g.box_length());
    for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
        const double kh2 = (double(k1) * k1 + double(k2) * k2) * invL2;
        const double k2n = (double(k1) * k1 + double(k2) * k2 + double(k3) * k3) * invL2;
        const double mass = std::norm(u.comp(1)[idx]) + std::norm(u.comp(2)[idx]) +
                            std::norm(u.comp(3)[idx]);
        out.gradh_l2_sq += kh2 * mass;
        out.gradh_h1_sq += kh2 * k2n * mass;
    });
    out.gradh_l2_sq *= g.volume();
    out.gradh_h1_sq *= g.volume();

    for (int i = 1; i <= 2; ++i) {
        for (int jj = 1; jj <= 2; ++jj) {
            for (int m = 1; m <= 2; ++m) out.e1 -= tri(d[i - 1][jj - 1], d[jj - 1][m - 1], d[i - 1][m - 1]);
            out.e2 -= tri(d[i - 1][jj - 1], d[jj - 1][2], d[i - 1][2]);
        }
        for (int l = 1; l <= 2; ++l) {
            out.j[i - 1][l - 1] = tri(d[i - 1][2], d[2][l - 1], d[i - 1][l - 1]);
            out.e3 -= out.j[i - 1][l - 1];
        }
        out.e4 -= tri(d[i - 1][2], d[2][2], d[i - 1][2]);
    }
    return out;
}

} // namespace lpns
