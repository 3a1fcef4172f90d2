/*
 * Copyright 2026 The Tornado Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line driver: run, sweep, series-check, fit, slice, clouds.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tornado/config.hpp"
#include "tornado/fields.hpp"
#include "tornado/integrator.hpp"
#include "tornado/io.hpp"
#include "tornado/series.hpp"

namespace fs = std::filesystem;
using namespace tornado;

namespace {

std::string snapshot_name(std::size_t step) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snap_%06zu.bin", step);
    return buf;
}

void write_diagnostics(const std::vector<StepDiagnostics>& diag, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    out << "t,discarded_energy,boundary_energy\n";
    for (const auto& d : diag) {
        out << format_double(d.t) << ',' << format_double(d.discarded_energy) << ','
            << format_double(d.boundary_energy) << '\n';
    }
}

void print_fit(const EnergyTrace& trace, double tail) {
    try {
        const BlowupFit fit = fit_blowup(trace, tail);
        std::cout << "fit: T_cr=" << format_double(fit.t_cr) << " alpha=" << format_double(fit.alpha)
                  << " window=[" << format_double(fit.t_lo) << "," << format_double(fit.t_hi) << "]"
                  << " points=" << fit.points << " residual=" << format_double(fit.residual)
                  << " (alpha/5=" << format_double(fit.alpha / 5.0) << ")\n";
    } catch (const NoBlowupSignature& e) {
        std::cout << "fit: " << e.what() << "\n";
    }
}

int cmd_run(const std::string& config_path, std::optional<std::string> out_dir) {
    RunConfig cfg = load_config(config_path);
    const fs::path dir = out_dir.value_or(cfg.output_dir);
    fs::create_directories(dir);
    const RunResult r = run(cfg, [&](const VectorField& v, double t, std::size_t n) {
        write_snapshot(v, t, (dir / snapshot_name(n)).string());
    });
    write_energy_csv(r.trace, (dir / "energy.csv").string());
    write_diagnostics(r.diagnostics, (dir / "diagnostics.csv").string());
    double m_min = r.trace[0].mynorm;
    double t_min = 0.0;
    for (const auto& rec : r.trace.records()) {
        if (rec.mynorm < m_min) {
            m_min = rec.mynorm;
            t_min = rec.t;
        }
    }
    std::cout << "outcome=" << to_string(r.outcome) << " steps=" << r.steps << " t_end=" << format_double(r.final_time)
              << " M0=" << format_double(r.trace[0].mynorm) << " M_min=" << format_double(m_min)
              << " at t=" << format_double(t_min) << " M_end=" << format_double(r.trace.back().mynorm) << "\n";
    if (is_blowup(r.outcome)) print_fit(r.trace, 0.5);
    return 0;
}

int cmd_sweep(const std::string& config_path, double amin, double amax, int steps, std::optional<double> bisect,
              std::optional<std::string> out_dir) {
    RunConfig cfg = load_config(config_path);
    if (!(amin > 0.0) || !(amax >= amin) || steps < 1) throw std::invalid_argument("sweep: need 0 < amin <= amax and steps >= 1");
    std::vector<double> amps;
    for (int q = 0; q < steps; ++q) {
        amps.push_back(steps == 1 ? amin : amin * std::pow(amax / amin, static_cast<double>(q) / (steps - 1)));
    }
    const fs::path dir = out_dir.value_or(cfg.output_dir);
    fs::create_directories(dir);
    SweepOptions opt;
    opt.bisect_relative_width = bisect;
    std::cout << "A,class,outcome,t_end,m_min,m_end,t_cr,bisection\n";
    const SweepResult res = sweep(cfg, amps, opt, [&](const SweepEntry& e, const RunResult& r) {
        const fs::path sub = dir / ("A_" + format_double(e.amplitude));
        fs::create_directories(sub);
        write_energy_csv(r.trace, (sub / "energy.csv").string());
        std::cout << format_double(e.amplitude) << ',' << (is_blowup(e.outcome) ? "blowup" : "decay") << ','
                  << to_string(e.outcome) << ',' << format_double(e.t_end) << ',' << format_double(e.m_min) << ','
                  << format_double(e.m_end) << ',' << (e.t_cr ? format_double(*e.t_cr) : std::string("")) << ','
                  << (e.from_bisection ? 1 : 0) << std::endl;
    });
    if (res.bracket) {
        std::cout << "bracket: A* in [" << format_double(res.bracket->first) << ", "
                  << format_double(res.bracket->second) << "]\n";
    }
    return 0;
}

int cmd_series_check(const std::string& config_path, int pmax, const std::vector<double>& amplitudes,
                     std::optional<double> t_opt, const std::string& rule_name) {
    RunConfig cfg = load_config(config_path);
    const double t = t_opt.value_or(cfg.t_max);
    const auto intervals = static_cast<std::size_t>(std::llround(t / cfg.dt));
    if (intervals < 1) throw std::invalid_argument("series-check: t must cover at least one step");
    const TimeQuadrature rule = rule_name == "trapezoid" ? TimeQuadrature::trapezoid : TimeQuadrature::left_endpoint;

    HermiteInitSpec unit = cfg.init;
    unit.A = 1.0;
    const VectorField c0 = build_initial_data(unit, cfg.grid);
    SeriesSet series(c0, t, intervals, ConvolutionPlan(cfg.grid, cfg.method), rule);
    for (int p = 2; p <= pmax; ++p) compute_hp(series, p);

    std::cout << "p,center_z,radius99,energy\n";
    for (const auto& s : support_report(series, cfg.init.R)) {
        std::cout << s.p << ',' << format_double(s.center_z) << ',' << format_double(s.radius99) << ','
                  << format_double(s.energy) << '\n';
    }
    std::cout << "A,abs_discrepancy,rel_discrepancy\n";
    RunConfig rc = cfg;
    rc.t_max = t;
    rc.blowup_threshold = 1e300;
    double previous = 0.0;
    for (double a : amplitudes) {
        VectorField v0 = c0;
        v0.scale(a);
        const RunResult r = run_from(rc, v0);
        const VectorField vs = series_solution(series, a, t, pmax);
        const double d = distance(vs, r.final_field);
        std::cout << format_double(a) << ',' << format_double(d) << ','
                  << format_double(d / std::sqrt(energy(r.final_field)));
        if (previous > 0.0) std::cout << "  (ratio to previous " << format_double(previous / d) << ")";
        std::cout << '\n';
        previous = d;
    }
    return 0;
}

int cmd_fit(const std::string& path, double tail) {
    const EnergyTrace trace = read_energy_csv(path);
    const BlowupFit fit = fit_blowup(trace, tail);
    std::cout << "T_cr=" << format_double(fit.t_cr) << "\nalpha=" << format_double(fit.alpha)
              << "\nwindow=" << format_double(fit.t_lo) << "," << format_double(fit.t_hi) << "\npoints=" << fit.points
              << "\nresidual=" << format_double(fit.residual) << "\nalpha_over_theory=" << format_double(fit.alpha / 5.0)
              << "\n";
    return 0;
}

int axis_index(const std::string& axis) {
    if (axis == "x") return 0;
    if (axis == "y") return 1;
    if (axis == "z") return 2;
    throw std::invalid_argument("axis must be x, y or z");
}

int cmd_slice(const std::string& path, const std::string& axis, std::optional<std::size_t> at,
              std::optional<std::string> range, const std::string& out) {
    const Snapshot snap = read_snapshot(path);
    SliceSelector sel{axis_index(axis), 0, 0};
    if (at && range) throw std::invalid_argument("slice: give --at or --range, not both");
    if (at) {
        sel.first = sel.last = *at;
    } else if (range) {
        const auto colon = range->find(':');
        if (colon == std::string::npos) throw std::invalid_argument("slice: --range expects FIRST:LAST");
        sel.first = std::stoul(range->substr(0, colon));
        sel.last = std::stoul(range->substr(colon + 1));
    } else {
        throw std::invalid_argument("slice: --at or --range is required");
    }
    export_slice(snap.field, sel, out);
    std::cout << "wrote " << out << ".csv, " << out << "_log10.csv, " << out << "_coords.txt\n";
    return 0;
}

int cmd_clouds(const std::string& path, double R, int pmax, double width) {
    const Snapshot snap = read_snapshot(path);
    const auto profile = z_marginal(snap.field);
    std::cout << "t=" << format_double(snap.t) << "\np,z_center,mass_fraction\n";
    for (const auto& c : detect_clouds(profile, snap.field.grid(), R, pmax, width)) {
        std::cout << c.p << ',' << format_double(c.z_center) << ',' << format_double(c.mass_fraction) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier-space Navier-Stokes blow-up simulator"};
    app.require_subcommand(1);

    std::string config;
    std::optional<std::string> out_dir;

    auto* run_cmd = app.add_subcommand("run", "Integrate a configuration; write energy trace and snapshots");
    run_cmd->add_option("config", config, "Run configuration file")->required();
    run_cmd->add_option("--out", out_dir, "Output directory (default: [output] dir)");

    double amin = 0.0, amax = 0.0;
    int steps = 0;
    std::optional<double> bisect;
    auto* sweep_cmd = app.add_subcommand("sweep", "Classify amplitudes as decay or blow-up");
    sweep_cmd->add_option("config", config)->required();
    sweep_cmd->add_option("--amin", amin)->required();
    sweep_cmd->add_option("--amax", amax)->required();
    sweep_cmd->add_option("--steps", steps)->required();
    sweep_cmd->add_option("--bisect", bisect, "Bisect the transition to this relative width");
    sweep_cmd->add_option("--out", out_dir);

    int pmax = 3;
    std::vector<double> amplitudes;
    std::optional<double> t_check;
    std::string rule = "left";
    auto* series_cmd = app.add_subcommand("series-check", "Compare the amplitude series with the integrator");
    series_cmd->add_option("config", config)->required();
    series_cmd->add_option("--pmax", pmax)->check(CLI::Range(2, 6));
    series_cmd->add_option("--amplitudes", amplitudes)->required()->delimiter(',');
    series_cmd->add_option("--t", t_check, "Comparison time (default t_max)");
    series_cmd->add_option("--rule", rule, "Time quadrature: left or trapezoid")->check(CLI::IsMember({"left", "trapezoid"}));

    std::string trace_path;
    double tail = 0.5;
    auto* fit_cmd = app.add_subcommand("fit", "Fit E ~ C/(T_cr - t)^alpha to the tail of a trace");
    fit_cmd->add_option("trace", trace_path)->required();
    fit_cmd->add_option("--tail", tail)->check(CLI::Range(0.0, 1.0));

    std::string snap_path, axis = "z", slice_out = "slice";
    std::optional<std::size_t> at;
    std::optional<std::string> range;
    auto* slice_cmd = app.add_subcommand("slice", "Export |v| over a plane or a range of planes");
    slice_cmd->add_option("snapshot", snap_path)->required();
    slice_cmd->add_option("--axis", axis)->check(CLI::IsMember({"x", "y", "z"}));
    slice_cmd->add_option("--at", at);
    slice_cmd->add_option("--range", range);
    slice_cmd->add_option("--out", slice_out);

    double R = 5.0, width = 3.0;
    int cloud_pmax = 10;
    auto* clouds_cmd = app.add_subcommand("clouds", "Report z-band mass near multiples of R");
    clouds_cmd->add_option("snapshot", snap_path)->required();
    clouds_cmd->add_option("--R", R)->required();
    clouds_cmd->add_option("--pmax", cloud_pmax)->required();
    clouds_cmd->add_option("--width", width);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) return cmd_run(config, out_dir);
        if (*sweep_cmd) return cmd_sweep(config, amin, amax, steps, bisect, out_dir);
        if (*series_cmd) return cmd_series_check(config, pmax, amplitudes, t_check, rule);
        if (*fit_cmd) return cmd_fit(trace_path, tail);
        if (*slice_cmd) return cmd_slice(snap_path, axis, at, range, slice_out);
        if (*clouds_cmd) return cmd_clouds(snap_path, R, cloud_pmax, width);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
