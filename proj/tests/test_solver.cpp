#include <catch_amalgamated.hpp>

#include "lpns/solver.hpp"
#include "oracles.hpp"

using namespace lpns;
using Catch::Approx;

namespace {
const double kVol = std::pow(2.0 * FourierGrid::pi(), 3);

VectorField stokes_mode(const FourierGrid& g, double amp = 1.0) {
    const ScalarField u1 =
        sample_field(g, [amp](double, double y, double) { return amp * std::sin(y); });
    return VectorField(u1, ScalarField(g), ScalarField(g));
}
} // namespace

TEST_CASE("taylor_green: divergence, energy, homogeneity") {
    const FourierGrid g = make_grid(16, 1.0);
    const VectorField u1 = taylor_green(g, 1.0);
    CHECK(divergence_defect(u1) < 1e-14);
    CHECK(energy(u1) == Approx(kVol / 4).epsilon(1e-12));
    const VectorField u2 = taylor_green(g, 2.0);
    CHECK(energy(u2) == Approx(kVol).epsilon(1e-12));
}

TEST_CASE("random_divfree: determinism, band, exact rescale, empty band") {
    const FourierGrid g = make_grid(16, 1.0);
    const VectorField a = random_divfree(g, 99, Band{1, 4}, 1.7);
    const VectorField b = random_divfree(g, 99, Band{1, 4}, 1.7);
    for (int c = 1; c <= 3; ++c) CHECK(l2_norm(a.comp(c) - b.comp(c)) == 0.0);
    CHECK(energy(a) == Approx(1.7 * 1.7).epsilon(1e-12));
    CHECK(divergence_defect(a) < 1e-13);
    for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
        const double r = std::sqrt(double(k1) * k1 + double(k2) * k2 + double(k3) * k3);
        if (r < 1.0 || r > 4.0)
            for (int c = 1; c <= 3; ++c) CHECK(std::abs(a.comp(c)[idx]) == 0.0);
    });
    CHECK_THROWS(random_divfree(g, 1, Band{100, 200}, 1.0));
}

TEST_CASE("nonlinear term: shear annihilates itself, output is solenoidal") {
    const FourierGrid g = make_grid(16, 1.0);
    const VectorField shear = stokes_mode(g);
    const VectorField n = nonlinear_term(shear);
    CHECK(l2_norm(n) < 1e-13);

    const VectorField u = random_divfree(g, 7, Band{1, 4}, 1.0);
    const VectorField nu = nonlinear_term(u);
    CHECK(divergence_defect(nu) <= 1e-12);
}

TEST_CASE("nonlinear term matches the direct convolution oracle on 8^3") {
    const FourierGrid g = make_grid(8, 1.0);
    const VectorField u = taylor_green(g, 1.0);
    const VectorField got = nonlinear_term(u);

    // -P(u . grad u) assembled by direct convolution sums over retained modes
    const int K = dealias_limit(8);
    auto coeff = [&](const ScalarField& f, int k1, int k2, int k3) -> std::complex<double> {
        if (std::abs(k1) > K || std::abs(k2) > K || std::abs(k3) > K) return {0.0, 0.0};
        return f.at((k1 + 8) % 8, (k2 + 8) % 8, (k3 + 8) % 8);
    };
    VectorField conv(g);
    for (int j = 1; j <= 3; ++j) {
        for (int o1 = -K; o1 <= K; ++o1)
            for (int o2 = -K; o2 <= K; ++o2)
                for (int o3 = -K; o3 <= K; ++o3) {
                    std::complex<double> acc(0.0, 0.0);
                    for (int p1 = -K; p1 <= K; ++p1)
                        for (int p2 = -K; p2 <= K; ++p2)
                            for (int p3 = -K; p3 <= K; ++p3) {
                                const int q1 = o1 - p1, q2 = o2 - p2, q3 = o3 - p3;
                                const std::complex<double> grad =
                                    std::complex<double>(0.0, 1.0) *
                                    (double(p1) * coeff(u.comp(1), q1, q2, q3) +
                                     double(p2) * coeff(u.comp(2), q1, q2, q3) +
                                     double(p3) * coeff(u.comp(3), q1, q2, q3));
                                acc += grad * coeff(u.comp(j), p1, p2, p3);
                            }
                    conv.comp(j).at((o1 + 8) % 8, (o2 + 8) % 8, (o3 + 8) % 8) = acc;
                }
    }
    // the convolution above is u . grad u with the roles p <-> q swapped:
    // acc = sum_p u_j(p)... it accumulates (u . grad) u^j at mode o
    VectorField expected = leray_project(conv);
    expected *= -1.0;
    double err = 0.0;
    for (int c = 1; c <= 3; ++c) err = std::max(err, l2_norm(got.comp(c) - expected.comp(c)));
    CHECK(err <= 1e-12 * std::max(1.0, l2_norm(expected)));
}

TEST_CASE("stepper reproduces the exact Stokes decay") {
    const FourierGrid g = make_grid(16, 1.0);
    VectorField u = stokes_mode(g);
    const double e0 = l2_norm(u);
    const Stepper st(g, 1.0, 1e-2);
    for (int s = 0; s < 100; ++s) u = st.step(u);
    const VectorField exact = std::exp(-1.0) * stokes_mode(g);
    CHECK(l2_norm(u - exact) <= 1e-10 * e0);
}

TEST_CASE("inviscid step: energy drift shrinks like dt^5") {
    const FourierGrid g = make_grid(16, 1.0);
    const VectorField u0 = taylor_green(g, 1.0);
    auto drift = [&](double dt) {
        const Stepper st(g, 0.0, dt);
        return std::abs(energy(st.step(u0)) - energy(u0));
    };
    const double d1 = drift(0.2);
    const double d2 = drift(0.1);
    CHECK(d1 / d2 == Approx(32.0).epsilon(0.5)); // fifth-order local error
}

TEST_CASE("CFL violation aborts and names the offending velocity") {
    const FourierGrid g = make_grid(16, 1.0);
    const VectorField u = taylor_green(g, 1.0);
    const Stepper st(g, 1.0, 5.0, 0.5);
    CHECK_THROWS_WITH(st.step(u), Catch::Matchers::ContainsSubstring("max|u|"));
}

TEST_CASE("run_simulation: trajectory invariants and energy report") {
    const FourierGrid g = make_grid(16, 1.0);
    RunParams p;
    p.nu = 1.0;
    p.dt = 1e-2;
    p.t_end = 0.2;
    p.output_stride = 5;
    const Trajectory traj = run_simulation(taylor_green(g, 1.0), p);
    REQUIRE(traj.scalars.size() == 21);
    REQUIRE(traj.snapshots.size() == 5);
    for (std::size_t i = 1; i < traj.snapshot_times.size(); ++i)
        CHECK(traj.snapshot_times[i] > traj.snapshot_times[i - 1]);
    for (const auto& s : traj.scalars) CHECK(s.max_div <= 1e-8);
    // energy is monotone nonincreasing for nu > 0
    for (std::size_t i = 1; i < traj.scalars.size(); ++i)
        CHECK(traj.scalars[i].energy <= traj.scalars[i - 1].energy * (1 + 1e-12));

    const EnergyReport rep = energy_report(traj, p.nu);
    for (double r : rep.residual) CHECK(std::abs(r) <= 1e-6 * rep.energy.front());
}

TEST_CASE("Stokes trajectory: energy equality to 1e-8") {
    const FourierGrid g = make_grid(16, 1.0);
    RunParams p;
    p.nu = 1.0;
    p.dt = 1e-2;
    p.t_end = 1.0;
    const Trajectory traj = run_simulation(stokes_mode(g), p);
    const EnergyReport rep = energy_report(traj, p.nu);
    for (double r : rep.residual) CHECK(std::abs(r) <= 1e-8 * rep.energy.front());
}

TEST_CASE("inviscid trajectory conserves energy to 1e-8 over unit time") {
    const FourierGrid g = make_grid(16, 1.0);
    RunParams p;
    p.nu = 0.0;
    p.dt = 2e-3;
    p.t_end = 1.0;
    p.output_stride = 100;
    const Trajectory traj = run_simulation(taylor_green(g, 1.0), p);
    const double e0 = traj.scalars.front().energy;
    for (const auto& s : traj.scalars) CHECK(std::abs(s.energy - e0) <= 1e-8 * e0);
}

TEST_CASE("gradh_budget: single-component shear has no trilinear terms") {
    const FourierGrid g = make_grid(16, 1.0);
    const GradHBudget b = gradh_budget(stokes_mode(g));
    CHECK(b.e1 == Approx(0.0).margin(1e-12));
    CHECK(b.e2 == Approx(0.0).margin(1e-12));
    CHECK(b.e3 == Approx(0.0).margin(1e-12));
    CHECK(b.e4 == Approx(0.0).margin(1e-12));
    for (int i = 0; i < 2; ++i)
        for (int l = 0; l < 2; ++l) CHECK(b.j[i][l] == Approx(0.0).margin(1e-12));
    CHECK(b.gradh_l2_sq == Approx(std::pow(l2_norm(stokes_mode(g).comp(1)), 2)).epsilon(1e-12));
}

TEST_CASE("gradh_budget balances the horizontal-gradient energy law") {
    const FourierGrid g = make_grid(16, 1.0);
    RunParams p;
    p.nu = 1.0;
    p.dt = 1e-3;
    p.t_end = 0.01;
    const Trajectory traj = run_simulation(taylor_green(g, 1.0), p);
    REQUIRE(traj.snapshots.size() >= 5);
    for (std::size_t i = 1; i + 1 < traj.snapshots.size(); ++i) {
        const double h = traj.snapshot_times[i + 1] - traj.snapshot_times[i];
        const double xdot = (gradh_budget(traj.snapshots[i + 1]).gradh_l2_sq -
                             gradh_budget(traj.snapshots[i - 1]).gradh_l2_sq) /
                            (2.0 * h) / 2.0;
        const GradHBudget b = gradh_budget(traj.snapshots[i]);
        CHECK(std::abs(xdot - b.rhs()) <= 1e-4 * std::abs(b.rhs()));
    }
}
