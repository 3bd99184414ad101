// Command-line front end: dispersion tables, simulations with CSV snapshot
// output, physical-to-dimensionless parameter conversion, and the elliptic
// oracle battery.
//
// Exit codes: 0 success, 2 validation/parse failure, 3 numerical blow-up,
// 4 oracle tolerance failure.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dww/dww.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitBlowUp = 3;
constexpr int kExitOracle = 4;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

// ---------------------------------------------------------------------------
// dispersion

int cmd_dispersion(const std::string& params_path, int k_max, const std::string& format,
                   const std::string& out_path) {
    const auto p = dww::config::load_model_params(dww::config::KeyValues::parse_file(params_path));
    if (format == "csv") {
        std::ostringstream os;
        os << "# dww.dispersion.v1\n";
        os << "k,re_omega_plus,im_omega_plus,re_omega_minus,im_omega_minus,omega_inviscid\n";
        for (int k = 0; k <= k_max; ++k) {
            const auto d = dww::dispersion(k, p);
            os << k << ',' << fmt(d.omega_plus.real()) << ',' << fmt(d.omega_plus.imag()) << ','
               << fmt(d.omega_minus.real()) << ',' << fmt(d.omega_minus.imag()) << ','
               << fmt(dww::dispersion_inviscid(k, p.beta)) << '\n';
        }
        write_text(out_path, os.str());
    } else {
        json rows = json::array();
        for (int k = 0; k <= k_max; ++k) {
            const auto d = dww::dispersion(k, p);
            rows.push_back({{"k", k},
                            {"re_omega_plus", d.omega_plus.real()},
                            {"im_omega_plus", d.omega_plus.imag()},
                            {"re_omega_minus", d.omega_minus.real()},
                            {"im_omega_minus", d.omega_minus.imag()},
                            {"omega_inviscid", dww::dispersion_inviscid(k, p.beta)}});
        }
        const json doc = {{"format", "dww.dispersion.v1"}, {"s", p.s}, {"rows", rows}};
        write_text(out_path, doc.dump(2) + "\n");
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// nondim

int cmd_nondim(const std::string& params_path) {
    const auto phys =
        dww::config::load_physical_params(dww::config::KeyValues::parse_file(params_path));
    const auto r = dww::to_dimensionless(phys);
    std::cout << "# dww.nondim.v1\n";
    std::cout << "epsilon = " << fmt(r.params.epsilon) << "\n";
    std::cout << "beta = " << fmt(r.params.beta) << "\n";
    std::cout << "alpha1 = " << fmt(r.params.alpha1) << "\n";
    std::cout << "alpha2 = " << fmt(r.params.alpha2) << "\n";
    std::cout << "s = " << r.params.s << "\n";
    std::cout << "time_scale = " << fmt(r.time_scale) << "\n";
    std::cout << "potential_scale = " << fmt(r.potential_scale) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

void write_snapshots(const dww::Trajectory& traj, const fs::path& dir) {
    const auto x = traj.grid.nodes();
    const bool wave = dww::is_wave_model(traj.model);
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        std::ostringstream os;
        os << "# dww.snapshot.v1\n";
        os << "# t=" << fmt(traj.times[i]) << "\n";
        os << "# columns: x,f," << (wave ? "ft" : "zeta") << "\n";
        const auto fa = dww::to_physical(traj.states[i].first);
        const auto fb = dww::to_physical(traj.states[i].second);
        for (std::size_t j = 0; j < x.size(); ++j)
            os << fmt(x[j]) << ',' << fmt(fa[j]) << ',' << fmt(fb[j]) << '\n';
        char name[32];
        std::snprintf(name, sizeof name, "snap_%06zu.csv", i);
        write_text((dir / name).string(), os.str());
    }
}

void write_mode_fits(const dww::Trajectory& traj, const fs::path& dir) {
    std::ostringstream os;
    os << "# dww.modefits.v1\n";
    os << "k,fitted_decay,fitted_frequency,residual,re_omega_plus,im_omega_plus,"
          "re_omega_minus,im_omega_minus,flags\n";
    for (int k : traj.tracked_modes) {
        const auto d = dww::dispersion(k, traj.params);
        try {
            const auto fit = dww::fit_mode(traj, k);
            os << k << ',' << fmt(fit.fitted_decay) << ',' << fmt(fit.fitted_frequency) << ','
               << fmt(fit.residual) << ',' << fmt(d.omega_plus.real()) << ','
               << fmt(d.omega_plus.imag()) << ',' << fmt(d.omega_minus.real()) << ','
               << fmt(d.omega_minus.imag()) << ','
               << (fit.flags.empty() ? "ok" : fit.flags) << '\n';
        } catch (const std::exception&) {
            os << k << ",nan,nan,nan," << fmt(d.omega_plus.real()) << ','
               << fmt(d.omega_plus.imag()) << ',' << fmt(d.omega_minus.real()) << ','
               << fmt(d.omega_minus.imag()) << ",no-signal\n";
        }
    }
    write_text((dir / "mode_fits.csv").string(), os.str());
}

int run_one_config(const fs::path& config_path, const fs::path& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    dww::SimConfig cfg;
    try {
        cfg = dww::config::load_sim_config_file(config_path.string());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    fs::create_directories(out_dir);
    json meta = {{"format", "dww.run.v1"},
                 {"version", dww::kVersion},
                 {"config", config_path.string()},
                 {"model", dww::model_name(cfg.model)},
                 {"n_points", cfg.n_points},
                 {"dt", cfg.dt},
                 {"t_end", cfg.t_end},
                 {"snapshot_every", cfg.snapshot_every}};

    int code = kExitOk;
    dww::Trajectory traj;
    try {
        traj = dww::run(cfg);
        meta["status"] = "ok";
    } catch (const dww::BlowUpError& e) {
        traj = e.partial();
        meta["status"] = "blow-up";
        meta["blow_up_time"] = e.time();
        std::cerr << "error: " << e.what() << " (partial output retained)\n";
        code = kExitBlowUp;
    } catch (const dww::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    write_text((out_dir / "config_echo.cfg").string(), dww::config::echo_sim_config(cfg));
    write_snapshots(traj, out_dir);
    if (code == kExitOk && traj.times.size() >= 16) write_mode_fits(traj, out_dir);
    for (const auto& w : traj.warnings) std::cerr << "warning: " << w << "\n";

    meta["snapshots"] = traj.times.size();
    meta["tracked_modes"] = traj.tracked_modes;
    meta["warnings"] = traj.warnings;
    meta["wall_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_text((out_dir / "run_meta.json").string(), meta.dump(2) + "\n");
    return code;
}

int cmd_simulate(const std::string& config_arg, const std::string& out_arg, int jobs) {
    const fs::path config_path(config_arg);
    if (!fs::exists(config_path)) {
        std::cerr << "error: no such config " << config_arg << "\n";
        return kExitValidation;
    }
    if (!fs::is_directory(config_path)) return run_one_config(config_path, out_arg);

    // Directory of configs: one run per file, jobs workers.
    std::vector<fs::path> configs;
    for (const auto& e : fs::directory_iterator(config_path))
        if (e.path().extension() == ".cfg") configs.push_back(e.path());
    std::sort(configs.begin(), configs.end());
    if (configs.empty()) {
        std::cerr << "error: no .cfg files in " << config_arg << "\n";
        return kExitValidation;
    }
    std::atomic<std::size_t> next{0};
    std::vector<int> codes(configs.size(), kExitOk);
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= configs.size()) return;
            codes[i] = run_one_config(configs[i], fs::path(out_arg) / configs[i].stem());
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < std::max(1, jobs); ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    int code = kExitOk;
    for (int c : codes) code = std::max(code, c);
    return code;
}

// ---------------------------------------------------------------------------
// oracle-check

struct OracleCase {
    std::string name;
    dww::SpectralField h0, xi0, xi1;
};

std::vector<OracleCase> oracle_battery(const dww::GridSpec& grid) {
    using dww::harmonic;
    std::vector<std::pair<std::string, dww::SpectralField>> h0s = {
        {"h0=0", dww::SpectralField(grid)},
        {"h0=0.1cos(x)", harmonic(grid, 1, 0.1, 0)},
        {"h0=0.05(cos(x)+sin(2x))", harmonic(grid, 1, 0.05, 0) + harmonic(grid, 2, 0, 0.05)}};
    std::vector<std::pair<std::string, dww::SpectralField>> xi0s = {
        {"xi0=sin(x)", harmonic(grid, 1, 0, 1)}, {"xi0=cos(3x)", harmonic(grid, 3, 1, 0)}};
    std::vector<std::pair<std::string, dww::SpectralField>> xi1s = {
        {"xi1=0", dww::SpectralField(grid)}, {"xi1=sin(2x)", harmonic(grid, 2, 0, 1)}};
    std::vector<OracleCase> cases;
    for (const auto& [hn, h] : h0s)
        for (const auto& [xn, x0] : xi0s)
            for (const auto& [yn, x1] : xi1s)
                cases.push_back({hn + " " + xn + " " + yn, h, x0, x1});
    return cases;
}

int cmd_oracle_check(double depth, int layers, int grid_n, double tolerance) {
    const dww::GridSpec grid(grid_n);
    const auto cases = oracle_battery(grid);
    bool ok = true;
    std::printf("# dww.oracle.v1\n");
    std::printf("# depth=%g layers=%d grid_n=%d tolerance=%g\n", depth, layers, grid_n, tolerance);
    std::printf("%-44s %-14s %-10s %s\n", "case", "residual", "ratio(x2)", "status");
    for (const auto& c : cases) {
        const double r = dww::check_phi1_identity(c.h0, c.xi0, c.xi1, depth, layers);
        // residual with half the layers; the ratio should approach 4 wherever
        // quadrature error dominates round-off
        const double r_half = dww::check_phi1_identity(c.h0, c.xi0, c.xi1, depth, layers / 2);
        const bool pass = r <= tolerance;
        ok = ok && pass;
        if (r > 1e-13)
            std::printf("%-44s %-14.6e %-10.3f %s\n", c.name.c_str(), r, r_half / r,
                        pass ? "pass" : "FAIL");
        else
            std::printf("%-44s %-14.6e %-10s %s\n", c.name.c_str(), r, "-",
                        pass ? "pass" : "FAIL");
        if (!pass)
            std::printf("# offending case: %s (residual %.6e > tolerance %g)\n", c.name.c_str(),
                        r, tolerance);
    }

    // Depth-truncation convergence on a fixed case, quadrature error held far
    // below the truncation error.
    std::printf("# depth sweep (h0=0.1cos(x), xi0=sin(x), xi1=0, layers=20001)\n");
    const auto h0 = dww::harmonic(grid, 1, 0.1, 0);
    const auto xi0 = dww::harmonic(grid, 1, 0, 1);
    const dww::SpectralField xi1(grid);
    double prev = 0.0;
    for (int d = 1; d <= 4; ++d) {
        const double r = dww::check_phi1_identity(h0, xi0, xi1, d, 20001);
        if (d == 1)
            std::printf("depth=%d residual=%.6e\n", d, r);
        else
            std::printf("depth=%d residual=%.6e ratio=%.4f (e^-3=%.4f)\n", d, r, r / prev,
                        std::exp(-3.0));
        prev = r;
    }
    return ok ? kExitOk : kExitOracle;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dww: pseudo-spectral models of viscously damped deep-water waves"};
    app.require_subcommand(1);

    std::string params_path, config_path, out_path = "-", format = "csv";
    int k_max = 32, jobs = 1, layers = 4000, grid_n = 64;
    double depth = 40.0, tolerance = 1e-6;

    auto* disp = app.add_subcommand("dispersion", "Tabulate dispersion relations");
    disp->add_option("--params", params_path, "model parameter file")->required();
    disp->add_option("--k-max", k_max, "largest wavenumber")->check(CLI::PositiveNumber);
    disp->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    disp->add_option("--out", out_path, "output path ('-' for stdout)");

    auto* sim = app.add_subcommand("simulate", "Run a simulation config (or a directory of them)");
    sim->add_option("--config", config_path, "config file or directory")->required();
    std::string sim_out = "out";
    sim->add_option("--out", sim_out, "output directory");
    sim->add_option("--jobs", jobs, "concurrent runs for a config directory")
        ->check(CLI::PositiveNumber);

    auto* nd = app.add_subcommand("nondim", "Convert physical parameters to dimensionless form");
    nd->add_option("--params", params_path, "physical parameter file")->required();

    auto* oc = app.add_subcommand("oracle-check", "Run the elliptic-oracle identity battery");
    oc->add_option("--depth", depth, "depth truncation D")->check(CLI::PositiveNumber);
    oc->add_option("--layers", layers, "quadrature layers");
    oc->add_option("--grid-n", grid_n, "collocation points");
    oc->add_option("--tolerance", tolerance, "residual tolerance")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (disp->parsed()) return cmd_dispersion(params_path, k_max, format, out_path);
        if (sim->parsed()) return cmd_simulate(config_path, sim_out, jobs);
        if (nd->parsed()) return cmd_nondim(params_path);
        if (oc->parsed()) {
            if (layers < 4) {
                std::cerr << "error: --layers must be at least 4\n";
                return kExitValidation;
            }
            return cmd_oracle_check(depth, layers, grid_n, tolerance);
        }
    } catch (const dww::BlowUpError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBlowUp;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
