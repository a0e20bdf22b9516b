// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run with --dump-regression to print candidate regression pins.

#include <chrono>
#include <cstring>
#include <iostream>
#include <sstream>

#include "lpns/harness.hpp"
#include "oracles.hpp"

using namespace lpns;

namespace {

bool g_dump_regression = false;
int g_failures = 0;

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const auto start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!pass) ++g_failures;
}

double rel_err(double got, double want) {
    const double scale = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / scale;
}

// --------------------------------------------------------------------------
// 1. spectral substrate
// --------------------------------------------------------------------------
void criterion_1() {
    const double t0 = now_seconds();
    double worst_parseval = 0.0, worst_roundtrip = 0.0;
    for (int n : {8, 16, 32}) {
        const FourierGrid g = make_grid(n, 1.0);
        const ScalarField f = random_scalar(g, 101 + n, Band{1.0, n / 2.0 - 1.0}, 2.0);
        const auto s = transform_inverse(f);
        double quad = 0.0;
        for (double v : s) quad += v * v;
        quad *= g.cell_volume();
        double spec = 0.0;
        for (const auto& c : f.coeffs()) spec += std::norm(c);
        spec *= g.volume();
        worst_parseval = std::max(worst_parseval, std::abs(spec - quad) / quad);

        const ScalarField f2 = transform_forward(g, s);
        double diff = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
            diff = std::max(diff, std::abs(f2[i] - f[i]));
            scale = std::max(scale, std::abs(f[i]));
        }
        worst_roundtrip = std::max(worst_roundtrip, diff / scale);
    }

    // derivative vs centered finite differences, second-order convergence
    auto fn = [](double x, double y, double z) {
        return std::cos(x + 2 * z) + std::sin(2 * y) * std::cos(z);
    };
    std::vector<double> errs;
    for (int n : {8, 16, 32}) {
        const FourierGrid g = make_grid(n, 1.0);
        const ScalarField f = sample_field(g, fn);
        const auto d = transform_inverse(derivative(f, 3));
        const auto s = transform_inverse(f);
        const double h = 2.0 * FourierGrid::pi() / n;
        double err = 0.0;
        for (int i1 = 0; i1 < n; ++i1)
            for (int i2 = 0; i2 < n; ++i2)
                for (int i3 = 0; i3 < n; ++i3) {
                    const double fd =
                        (s[g.index(i1, i2, (i3 + 1) % n)] - s[g.index(i1, i2, (i3 + n - 1) % n)]) /
                        (2 * h);
                    err = std::max(err, std::abs(fd - d[g.index(i1, i2, i3)]));
                }
        errs.push_back(err);
    }
    const double r1 = errs[0] / errs[1], r2 = errs[1] / errs[2];
    const double elapsed = now_seconds() - t0;

    std::ostringstream detail;
    detail << "parseval " << worst_parseval << ", roundtrip " << worst_roundtrip << ", fd ratios "
           << r1 << "/" << r2 << ", " << elapsed << " s";
    report(1, "spectral substrate", worst_parseval <= 1e-12 && worst_roundtrip <= 1e-12 &&
                                        std::abs(r1 - 4) < 0.8 && std::abs(r2 - 4) < 0.8 &&
                                        elapsed < 30.0,
           detail.str());
}

// --------------------------------------------------------------------------
// 2. Littlewood-Paley exactness
// --------------------------------------------------------------------------
void criterion_2() {
    double worst_partition = 0.0, worst_recon = 0.0;
    bool ortho_exact = true;
    for (int n : {16, 32}) {
        const FourierGrid g = make_grid(n, 1.0);
        const DyadicFilterBank bank(g);
        for (Kind kind : {Kind::Horizontal, Kind::Vertical, Kind::Isotropic}) {
            // pointwise partition of unity off the zero set
            const std::size_t cells = bank.multiplier(kind, bank.j_min(kind)).size();
            std::vector<double> sum(cells, 0.0);
            for (int j = bank.j_min(kind); j <= bank.j_max(kind); ++j) {
                const auto& m = bank.multiplier(kind, j);
                for (std::size_t i = 0; i < cells; ++i) sum[i] += m[i];
            }
            for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
                const double r = bank.radius(kind, k1, k2, k3);
                if (r == 0.0) return;
                const std::size_t fi = kind == Kind::Horizontal
                                           ? (idx / g.n(2)) // (i1*n2+i2)
                                           : kind == Kind::Vertical ? idx % g.n(2) : idx;
                worst_partition = std::max(worst_partition, std::abs(sum[fi] - 1.0));
            });

            // reconstruction: f = below-range content + sum of blocks
            ScalarField f = random_scalar(g, 7 + n, Band{1.0, n / 2.0 - 1.0});
            f[0] = 0.21;
            ScalarField rec(g);
            for (int j = bank.j_min(kind); j <= bank.j_max(kind); ++j) rec += block(bank, f, kind, j);
            for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
                if (bank.radius(kind, k1, k2, k3) == 0.0) rec[idx] += f[idx];
            });
            worst_recon = std::max(worst_recon, l2_norm(rec - f) / l2_norm(f));

            // almost-orthogonality, exact
            for (int m = bank.j_min(kind); m <= bank.j_max(kind); ++m)
                for (int mp = m + 2; mp <= bank.j_max(kind); ++mp) {
                    const ScalarField bb = block(bank, block(bank, f, kind, m), kind, mp);
                    for (const auto& c : bb.coeffs())
                        if (std::abs(c) != 0.0) ortho_exact = false;
                }
        }
    }
    std::ostringstream detail;
    detail << "partition " << worst_partition << ", reconstruction " << worst_recon
           << ", orthogonality " << (ortho_exact ? "exact" : "BROKEN");
    report(2, "Littlewood-Paley exactness",
           worst_partition <= 1e-12 && worst_recon <= 1e-10 && ortho_exact, detail.str());
}

// --------------------------------------------------------------------------
// 3. norm oracle equivalence, 20 fields per norm on 16^3
// --------------------------------------------------------------------------
void criterion_3() {
    const FourierGrid g = make_grid(16, 1.0);
    const DyadicFilterBank bank(g);
    double worst = 0.0;
    std::string worst_norm = "none";
    auto track = [&](const std::string& name, double got, double want) {
        const double e = rel_err(got, want);
        if (e > worst) {
            worst = e;
            worst_norm = name;
        }
    };
    for (int i = 0; i < 20; ++i) {
        const std::uint64_t seed = 1000 + i;
        const ScalarField f = random_scalar(g, seed, Band{1, 7});
        track("sobolev", sobolev(f, 0.5), oracle::sobolev(f, 0.5));
        track("sobolev", sobolev(f, -0.5), oracle::sobolev(f, -0.5));
        track("aniso_sobolev", aniso_sobolev(f, 0.75, 0.25), oracle::aniso_sobolev(f, 0.75, 0.25));
        track("besov", besov(bank, f, -0.5, 3, kInf), oracle::besov(f, -0.5, 3, kInf));
        track("besov", besov(bank, f, 0.5, 2, 1), oracle::besov(f, 0.5, 2, 1));
        track("aniso_besov", aniso_besov(bank, f, 0.25, 0.25, 2, kInf, 2, kInf),
              oracle::aniso_besov(f, 0.25, 0.25, 2, kInf, 2, kInf));
        track("log_half.h", log_half(f, LogDirection::Horizontal, 10), oracle::log_half(f, 'h', 10));
        track("log_half.v", log_half(f, LogDirection::Vertical, 10), oracle::log_half(f, 'v', 10));
        track("log_half.min", log_half(f, LogDirection::Min, 10), oracle::log_half(f, 'm', 10));
    }
    std::ostringstream detail;
    detail << "worst rel err " << worst << " in " << worst_norm;
    report(3, "norm oracle equivalence", worst <= 1e-10, detail.str());
}

// --------------------------------------------------------------------------
// 4. Bony identity
// --------------------------------------------------------------------------
void criterion_4() {
    const FourierGrid g = make_grid(16, 1.0);
    const DyadicFilterBank bank(g);
    double worst = 0.0;
    for (Kind kind : {Kind::Horizontal, Kind::Vertical, Kind::Isotropic}) {
        for (int i = 0; i < 20; ++i) {
            ScalarField a = random_scalar(g, 2000 + i, Band{1, 5});
            ScalarField b = random_scalar(g, 3000 + i, Band{1, 5});
            if (i % 3 == 0) {
                a[0] = 0.4;
                b[0] = -0.7;
            }
            const BonyParts parts = bony(bank, a, b, kind);
            const ScalarField ab = dealiased_product(a, b);
            worst = std::max(worst,
                             l2_norm(parts.t_ab + parts.t_ba + parts.r_ab - ab) / l2_norm(ab));
            worst = std::max(worst, l2_norm(parts.t_tilde_ab + parts.t_ba - ab) / l2_norm(ab));
        }
    }
    // two-mode support case: exact split
    const FourierGrid gv = make_grid({8, 8, 32}, 1.0);
    const DyadicFilterBank bankv(gv);
    const ScalarField a = sample_field(gv, [](double, double, double z) { return std::cos(z); });
    const ScalarField b = sample_field(gv, [](double, double, double z) { return std::cos(8 * z); });
    const BonyParts parts = bony(bankv, a, b, Kind::Vertical);
    double spill = 0.0;
    for (const auto& c : parts.t_ba.coeffs()) spill = std::max(spill, std::abs(c));
    for (const auto& c : parts.r_ab.coeffs()) spill = std::max(spill, std::abs(c));
    const double two_mode =
        l2_norm(parts.t_ab - dealiased_product(a, b)) / l2_norm(dealiased_product(a, b));

    std::ostringstream detail;
    detail << "worst reconstruction " << worst << ", two-mode spill " << spill << ", t_ab err "
           << two_mode;
    report(4, "Bony identity", worst <= 1e-10 && spill <= 1e-13 && two_mode <= 1e-12, detail.str());
}

// --------------------------------------------------------------------------
// 5. Biot-Savart / Riesz identity on 32^3
// --------------------------------------------------------------------------
void criterion_5() {
    const FourierGrid g = make_grid(32, 1.0);
    double worst_recon = 0.0, worst_riesz = 0.0;
    for (int i = 0; i < 5; ++i) {
        const VectorField u = random_divfree(g, 4000 + i, Band{1, 10}, 1.0);
        const DivCurlParts parts = divcurl_decompose(u);
        for (int c = 0; c < 2; ++c) {
            const ScalarField recon =
                parts.curl_part[c] + parts.grad_part[c] + parts.plane_residual[c];
            worst_recon = std::max(worst_recon, l2_norm(recon - u.comp(c + 1)) / l2_norm(u));
        }
        const ScalarField w3 = vorticity3(u);
        const ScalarField d3u3 = derivative(u.comp(3), 3);
        for (int ii = 1; ii <= 2; ++ii)
            for (int jj = 1; jj <= 2; ++jj) {
                const ScalarField got = riesz_partial(ii, jj, w3, d3u3);
                ScalarField want = derivative(u.comp(jj), ii);
                for_each_mode(g, [&](std::size_t idx, int k1, int k2, int k3) {
                    (void)k3;
                    if (k1 == 0 && k2 == 0) want[idx] = 0.0;
                });
                worst_riesz = std::max(worst_riesz, l2_norm(got - want) / l2_norm(want));
            }
    }
    std::ostringstream detail;
    detail << "div-curl " << worst_recon << ", riesz " << worst_riesz;
    report(5, "Biot-Savart identities", worst_recon <= 1e-10 && worst_riesz <= 1e-10, detail.str());
}

// --------------------------------------------------------------------------
// 6. explicit-constant lemma (B4)
// --------------------------------------------------------------------------
void criterion_6() {
    const double t0 = now_seconds();
    EnsembleConfig cfg;
    cfg.grids = {32};
    cfg.samples = 100;
    cfg.seed = 7;
    const HarnessReport rep = verify_lemma("B4", cfg);
    double max_ratio = 0.0;
    for (const auto& t : rep.tuples)
        for (double r : t.max_ratio) max_ratio = std::max(max_ratio, r);
    const double elapsed = now_seconds() - t0;
    std::ostringstream detail;
    detail << "max ratio " << max_ratio << " vs " << std::sqrt(2.0) * 1.05 << ", " << elapsed
           << " s";
    report(6, "explicit-constant bound", max_ratio <= std::sqrt(2.0) * 1.05 && elapsed < 120.0,
           detail.str());
}

// --------------------------------------------------------------------------
// 7. empirical-constant stability across 16^3 -> 32^3
// --------------------------------------------------------------------------
void criterion_7() {
    bool all_pass = true;
    std::ostringstream detail;
    for (const char* id : {"B1", "B2", "B3", "B5", "B6", "B7", "L22", "L23"}) {
        EnsembleConfig cfg;
        cfg.grids = {16, 32};
        cfg.samples = 100;
        cfg.seed = 7;
        const HarnessReport rep = verify_lemma(id, cfg);
        all_pass = all_pass && rep.pass && !rep.violation;
        detail << id << " drift " << rep.max_drift << (rep.pass ? "" : " FAIL") << "; ";
    }
    report(7, "empirical-constant stability", all_pass, detail.str());
}

// --------------------------------------------------------------------------
// 8. solver correctness
// --------------------------------------------------------------------------
void criterion_8() {
    // exact Stokes mode
    const FourierGrid g16 = make_grid(16, 1.0);
    const ScalarField sy =
        sample_field(g16, [](double, double y, double) { return std::sin(y); });
    VectorField stokes(sy, ScalarField(g16), ScalarField(g16));
    const double e0 = l2_norm(stokes);
    {
        const Stepper st(g16, 1.0, 1e-2);
        for (int s = 0; s < 100; ++s) stokes = st.step(stokes);
    }
    const ScalarField sy_exact =
        sample_field(g16, [](double, double y, double) { return std::exp(-1.0) * std::sin(y); });
    const double stokes_err = l2_norm(stokes.comp(1) - sy_exact) / e0;

    // RK4 order on a nonlinear trajectory (the integrating factor integrates
    // the Stokes mode exactly, so the order study needs a nonlinear case)
    auto run_tg = [&](double dt) {
        RunParams p;
        p.nu = 1.0;
        p.dt = dt;
        p.t_end = 0.1;
        p.output_stride = 1 << 20; // endpoints only
        return run_simulation(taylor_green(g16, 1.0), p).snapshots.back();
    };
    const VectorField ref = run_tg(3.125e-4);
    std::vector<double> errs;
    for (double dt : {1e-2, 5e-3, 2.5e-3}) {
        const VectorField sol = run_tg(dt);
        double e = 0.0;
        for (int c = 1; c <= 3; ++c) e = std::max(e, l2_norm(sol.comp(c) - ref.comp(c)));
        errs.push_back(e);
    }
    const double p1 = std::log2(errs[0] / errs[1]);
    const double p2 = std::log2(errs[1] / errs[2]);
    const bool order_ok = std::abs(p1 - 4.0) <= 0.8 && std::abs(p2 - 4.0) <= 0.8;

    // energy inequality residual on Taylor-Green 32^3
    const FourierGrid g32 = make_grid(32, 1.0);
    RunParams pe;
    pe.nu = 1.0;
    pe.dt = 5e-4;
    pe.t_end = 1.0;
    pe.output_stride = 1 << 20;
    const Trajectory etraj = run_simulation(taylor_green(g32, 1.0), pe);
    const EnergyReport erep = energy_report(etraj, pe.nu);
    double worst_res = 0.0;
    for (double r : erep.residual) worst_res = std::max(worst_res, std::abs(r) / erep.energy.front());

    // inviscid conservation
    RunParams pi;
    pi.nu = 0.0;
    pi.dt = 2e-3;
    pi.t_end = 1.0;
    pi.output_stride = 1 << 20;
    const Trajectory itraj = run_simulation(taylor_green(g16, 1.0), pi);
    double worst_cons = 0.0;
    const double ie0 = itraj.scalars.front().energy;
    for (const auto& s : itraj.scalars)
        worst_cons = std::max(worst_cons, std::abs(s.energy - ie0) / ie0);

    std::ostringstream detail;
    detail << "stokes " << stokes_err << ", orders " << p1 << "/" << p2 << ", energy residual "
           << worst_res << ", inviscid drift " << worst_cons;
    report(8, "solver correctness",
           stokes_err <= 1e-10 && order_ok && worst_res <= 1e-6 && worst_cons <= 1e-8,
           detail.str());
}

// --------------------------------------------------------------------------
// 9. horizontal-gradient budget identity
// --------------------------------------------------------------------------
void criterion_9() {
    const FourierGrid g = make_grid(32, 1.0);
    RunParams p;
    p.nu = 1.0;
    p.dt = 1e-3;
    p.t_end = 0.01;
    const Trajectory traj = run_simulation(taylor_green(g, 1.0), p);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < traj.snapshots.size(); ++i) {
        const double h = traj.snapshot_times[i + 1] - traj.snapshot_times[i];
        const double xdot = (gradh_budget(traj.snapshots[i + 1]).gradh_l2_sq -
                             gradh_budget(traj.snapshots[i - 1]).gradh_l2_sq) /
                            (2.0 * h) / 2.0;
        const GradHBudget b = gradh_budget(traj.snapshots[i]);
        worst = std::max(worst, std::abs(xdot - b.rhs()) / std::abs(b.rhs()));
    }
    std::ostringstream detail;
    detail << "worst balance error " << worst;
    report(9, "gradient-energy budget identity", worst <= 1e-4, detail.str());
}

// --------------------------------------------------------------------------
// 10. monitor end-to-end
// --------------------------------------------------------------------------
void criterion_10() {
    const double t0 = now_seconds();
    const FourierGrid g = make_grid(32, 1.0);
    const DyadicFilterBank bank(g);
    RunParams p;
    p.nu = 1.0;
    p.dt = 1e-2;
    p.t_end = 1.0;
    p.output_stride = 10;
    const Trajectory traj = run_simulation(taylor_green(g, 1.0), p);

    CriteriaConfig cc;
    cc.logE_list = {1.0, 10.0};
    cc.p_alpha_list = {{2.0, 0.25}, {4.0, 0.0}};
    cc.m_beta_list = {{2.0, 0.25}, {4.0, 0.0}};
    cc.qp_list = {{3.0, 3.0}};
    const CriterionReport rep = criteria_series(traj.snapshot_times, traj.snapshots, bank, cc);
    const json j1 = criteria_report_json(rep, g, "acceptance", cc);
    const CriterionReport rep2 = criteria_series(traj.snapshot_times, traj.snapshots, bank, cc);
    const json j2 = criteria_report_json(rep2, g, "acceptance", cc);
    const bool deterministic = j1.dump() == j2.dump();

    bool finite = true, monotone = true;
    for (const auto& s : rep.series) {
        for (double v : s.values) finite = finite && std::isfinite(v);
        for (std::size_t i = 1; i < s.running_integral.size(); ++i)
            monotone = monotone && s.running_integral[i] >= s.running_integral[i - 1];
    }
    const bool gronwall_ok = rep.gronwall_dominates;

    // oracle spot checks at t in {0, 0.5, 1}
    double worst_spot = 0.0;
    for (std::size_t idx : {std::size_t(0), traj.snapshots.size() / 2, traj.snapshots.size() - 1}) {
        const VectorField& u = traj.snapshots[idx];
        const ScalarField d3u3 = derivative(u.comp(3), 3);
        const ScalarField w3 = vorticity3(u);
        for (const auto& s : rep.series) {
            if (s.field == "u3" && s.norm == "logh12:dir=v,E=10") {
                worst_spot = std::max(
                    worst_spot, rel_err(s.values[idx], oracle::log_half(u.comp(3), 'v', 10.0)));
            } else if (s.field == "d3u3" && s.norm == "anisob:t=0.25,s=0.25,p=2,r=inf") {
                worst_spot = std::max(worst_spot,
                                      rel_err(s.values[idx],
                                              oracle::aniso_besov(d3u3, 0.25, 0.25, 2, kInf, 2, kInf)));
            } else if (s.field == "omega3" && s.norm.rfind("besov:", 0) == 0) {
                worst_spot = std::max(
                    worst_spot,
                    rel_err(s.values[idx], oracle::besov(w3, 3.0 / 3.0 + 2.0 / 3.0 - 2.0, 3, kInf)));
            }
        }
    }
    const bool spot_ok = worst_spot <= 1e-10;

    // regression pins from the first oracle-verified run (values are
    // deterministic: fixed seed-free initial data, fixed plan selection)
    struct Pin {
        const char* field;
        const char* norm;
        std::size_t sample;
        double value;
    };
    const std::vector<Pin> pins = {
        {"u3", "logh12:dir=v,E=10", 10, 0.0},
        {"d3u3", "anisob:t=0.25,s=0.25,p=2,r=inf", 5, 0.0},
        {"omega3", "besov:", 0, 0.0},
    };
    bool regression_ok = true;
    double worst_reg = 0.0;
    if (g_dump_regression) {
        std::cout.precision(17);
        for (const auto& s : rep.series) {
            std::cout << "  series " << s.label() << ": v[0]=" << s.values.front()
                      << " v[5]=" << s.values[5] << " v[10]=" << s.values.back() << "\n";
        }
    } else {
        for (const auto& pin : pins) {
            if (pin.value == 0.0) continue; // pins not recorded yet
            for (const auto& s : rep.series)
                if (s.field == pin.field && s.norm.rfind(pin.norm, 0) == 0)
                    worst_reg = std::max(worst_reg, rel_err(s.values[pin.sample], pin.value));
        }
        regression_ok = worst_reg <= 1e-9;
    }

    const double elapsed = now_seconds() - t0;
    std::ostringstream detail;
    detail << "elapsed " << elapsed << " s, deterministic " << (deterministic ? "yes" : "NO")
           << ", spot err " << worst_spot << ", regression err " << worst_reg << ", gronwall ratio "
           << rep.gronwall_max_ratio;
    report(10, "monitor end-to-end", elapsed < 60.0 && deterministic && finite && monotone &&
                                         gronwall_ok && spot_ok && regression_ok,
           detail.str());
}

} // namespace

int main(int argc, char** argv) {
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--dump-regression") == 0) g_dump_regression = true;

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();

    if (g_failures == 0) {
        std::cout << "acceptance: all criteria passed" << std::endl;
        return 0;
    }
    std::cout << "acceptance: " << g_failures << " criterion(s) failed" << std::endl;
    return 1;
}
