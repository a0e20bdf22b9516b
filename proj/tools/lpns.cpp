// Command-line front end: simulate / monitor / verify / info.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lpns/harness.hpp"

namespace fs = std::filesystem;
using lpns::json;

namespace {

std::string snapshot_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "snap_%06zu.lpns", index);
    return buf;
}

int run_simulate(const std::string& config_path, const std::string& out_dir) {
    const lpns::Config cfg = lpns::Config::parse_file(config_path);
    const lpns::SolverSetup setup = lpns::solver_setup_from_config(cfg);
    const lpns::FourierGrid grid = lpns::make_grid(setup.n, setup.box_length);
    const lpns::VectorField u0 = lpns::make_initial_data(setup.init, grid);
    const lpns::Trajectory traj = lpns::run_simulation(u0, setup.params);

    fs::create_directories(out_dir);
    json meta = lpns::report_header("simulation", grid, cfg.hash());
    meta["init"] = setup.init;
    meta["viscosity"] = setup.params.nu;
    meta["dt"] = setup.params.dt;
    meta["t_end"] = setup.params.t_end;
    meta["output_stride"] = setup.params.output_stride;
    meta["cfl_safety"] = setup.params.cfl_safety;
    meta["times"] = traj.snapshot_times;
    json files = json::array();
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        const std::string name = snapshot_name(i);
        lpns::snapshot::write_vector(fs::path(out_dir) / name, traj.snapshots[i]);
        files.push_back(name);
    }
    meta["snapshot_files"] = files;
    lpns::write_json_atomic(fs::path(out_dir) / "meta.json", meta);

    std::ostringstream csv;
    csv.precision(17);
    csv << "t,energy,enstrophy,max_div,dt\n";
    for (const auto& s : traj.scalars)
        csv << s.t << "," << s.energy << "," << s.enstrophy << "," << s.max_div << "," << s.dt
            << "\n";
    lpns::write_text_atomic(fs::path(out_dir) / "scalars.csv", csv.str());
    std::cout << "wrote " << traj.snapshots.size() << " snapshots to " << out_dir << "\n";
    return 0;
}

int run_monitor(const std::string& traj_dir, const std::string& criteria_path,
                const std::string& out_path) {
    std::ifstream metain(fs::path(traj_dir) / "meta.json");
    if (!metain) throw std::runtime_error("missing trajectory metadata: " + traj_dir + "/meta.json");
    json meta = json::parse(metain);
    const auto nvec = meta["grid"]["n"].get<std::vector<int>>();
    const lpns::FourierGrid grid =
        lpns::make_grid({nvec[0], nvec[1], nvec[2]}, meta["grid"]["box_length"].get<double>());
    const auto times = meta["times"].get<std::vector<double>>();
    const auto files = meta["snapshot_files"].get<std::vector<std::string>>();
    if (times.size() != files.size())
        throw std::runtime_error("corrupt trajectory metadata: times/snapshot_files mismatch");
    std::vector<lpns::VectorField> snaps;
    snaps.reserve(files.size());
    for (const auto& f : files) snaps.push_back(lpns::snapshot::read_vector(fs::path(traj_dir) / f, grid));

    const lpns::Config ccfg = lpns::Config::parse_file(criteria_path);
    const lpns::CriteriaConfig criteria = lpns::CriteriaConfig::from_config(ccfg);
    const lpns::DyadicFilterBank bank(grid);
    const lpns::CriterionReport rep = lpns::criteria_series(times, snaps, bank, criteria);

    const std::string combined_hash =
        lpns::fnv1a_hex(meta["config_hash"].get<std::string>() + "+" + ccfg.hash());
    lpns::write_json_atomic(out_path, lpns::criteria_report_json(rep, grid, combined_hash, criteria));

    std::string csv_path = out_path;
    const std::string suffix = ".json";
    if (csv_path.size() > suffix.size() &&
        csv_path.compare(csv_path.size() - suffix.size(), suffix.size(), suffix) == 0)
        csv_path = csv_path.substr(0, csv_path.size() - suffix.size());
    csv_path += ".csv";
    lpns::write_text_atomic(csv_path, lpns::criteria_series_csv(rep));
    std::cout << "wrote " << out_path << " and " << csv_path << "\n";
    return 0;
}

int run_verify(const std::string& lemma, std::vector<int> grids, int samples, std::uint64_t seed,
               double box_length, const std::string& out_path) {
    lpns::EnsembleConfig cfg;
    if (!grids.empty()) cfg.grids = std::move(grids);
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.box_length = box_length;
    const lpns::HarnessReport rep = lpns::verify_lemma(lemma, cfg);
    const json j = lpns::harness_report_json(rep, cfg);
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        lpns::write_json_atomic(out_path, j);
        std::cout << "wrote " << out_path << "\n";
    }
    return rep.pass ? 0 : 2;
}

int run_info(int n, double box_length) {
    const lpns::FourierGrid grid = lpns::make_grid(n, box_length);
    const lpns::DyadicFilterBank bank(grid);
    json j;
    j["schema"] = lpns::kReportSchema;
    j["kind"] = "bank-info";
    j["version"] = lpns::kVersion;
    j["grid"] = lpns::grid_json(grid);
    j["domain_notice"] = lpns::kDomainNotice;
    const struct {
        const char* name;
        lpns::Kind kind;
    } kinds[] = {{"horizontal", lpns::Kind::Horizontal},
                 {"vertical", lpns::Kind::Vertical},
                 {"isotropic", lpns::Kind::Isotropic}};
    for (const auto& [name, kind] : kinds) {
        json kj;
        kj["j_min"] = bank.j_min(kind);
        kj["j_max"] = bank.j_max(kind);
        json annuli = json::array();
        for (int jj = bank.j_min(kind); jj <= bank.j_max(kind); ++jj)
            annuli.push_back(
                {{"j", jj},
                 {"annulus", {lpns::DyadicFilterBank::annulus_lo(jj), lpns::DyadicFilterBank::annulus_hi(jj)}}});
        kj["indices"] = annuli;
        j[name] = kj;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Anisotropic Littlewood-Paley / Navier-Stokes toolkit"};
    app.require_subcommand(1);

    auto* sim = app.add_subcommand("simulate", "run the solver and write snapshots + scalar CSV");
    std::string sim_config, sim_out;
    sim->add_option("--config", sim_config, "key = value config file")->required();
    sim->add_option("--out", sim_out, "output directory")->required();

    auto* mon = app.add_subcommand("monitor", "criterion quantities along a stored trajectory");
    std::string mon_traj, mon_criteria, mon_out;
    mon->add_option("--traj", mon_traj, "trajectory directory written by simulate")->required();
    mon->add_option("--criteria", mon_criteria, "criteria config file")->required();
    mon->add_option("--out", mon_out, "report JSON path")->required();

    auto* ver = app.add_subcommand("verify", "empirical inequality harness for one lemma");
    std::string ver_lemma, ver_out;
    std::vector<int> ver_grids;
    int ver_samples = 100;
    std::uint64_t ver_seed = 1;
    double ver_box = 1.0;
    ver->add_option("--lemma", ver_lemma, "B1..B7, L21, L22, L23 or RIESZ")->required();
    ver->add_option("--grid", ver_grids, "grid size(s); repeat for a drift check (default 16 32)");
    ver->add_option("--samples", ver_samples, "ensemble size per grid");
    ver->add_option("--seed", ver_seed, "ensemble seed");
    ver->add_option("--box", ver_box, "box length L");
    ver->add_option("--out", ver_out, "report JSON path (stdout when omitted)");

    auto* inf = app.add_subcommand("info", "dyadic bank active ranges and annuli as JSON");
    int info_n = 32;
    double info_box = 1.0;
    inf->add_option("--bank", info_n, "grid size")->required();
    inf->add_option("--box", info_box, "box length L");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return run_simulate(sim_config, sim_out);
        if (mon->parsed()) return run_monitor(mon_traj, mon_criteria, mon_out);
        if (ver->parsed())
            return run_verify(ver_lemma, ver_grids, ver_samples, ver_seed, ver_box, ver_out);
        if (inf->parsed()) return run_info(info_n, info_box);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
