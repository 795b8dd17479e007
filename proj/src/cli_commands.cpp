#include "arz/cli_commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "arz/analysis.hpp"
#include "arz/csv_io.hpp"
#include "arz/errors.hpp"
#include "arz/plot.hpp"
#include "arz/scenario.hpp"
#include "arz/solver.hpp"

namespace arz {

namespace {

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct ManifestInfo {
    std::string label;
    std::string command;
    std::string status = "ok";
    double wall_clock_s = 0.0;
    std::vector<std::string> outputs;
    std::vector<std::string> audit_lines;
    std::string parameter_dump;
};

void write_manifest(const std::filesystem::path& dir, const ManifestInfo& m) {
    std::ofstream out(dir / "manifest.txt", std::ios::binary);
    out << "scenario: " << m.label << '\n'
        << "command: " << m.command << '\n'
        << "status: " << m.status << '\n'
        << "wall_clock_s: " << fmt_g17(m.wall_clock_s) << '\n';
    out << "outputs:\n";
    for (const auto& o : m.outputs) out << "  " << o << '\n';
    out << "audit:\n";
    for (const auto& a : m.audit_lines) out << "  " << a << '\n';
    out << "parameters:\n";
    std::istringstream dump(m.parameter_dump);
    for (std::string line; std::getline(dump, line);) out << "  " << line << '\n';
}

void audit_summary(const SimulationRecord& rec, std::vector<std::string>& lines) {
    lines.push_back("steps: " + std::to_string(rec.audits.size()));
    lines.push_back("max_cfl: " + fmt_g17(rec.max_cfl()));
    lines.push_back("cfl_warnings: " + std::to_string(rec.cfl_warnings()));
    lines.push_back("density_clamps: " + std::to_string(rec.total_density_clamps()));
    lines.push_back("velocity_clamps: " + std::to_string(rec.total_velocity_clamps()));
    if (!rec.audits.empty()) {
        lines.push_back("mass_initial_veh: " + fmt_g17(rec.audits.front().mass_before));
        lines.push_back("mass_final_veh: " + fmt_g17(rec.audits.back().mass_after));
        lines.push_back("ledger_residual_max_veh: " +
                        fmt_g17(max_abs_residual(mass_ledger(rec))));
    }
}

int config_error(const char* what) {
    std::cerr << "config error: " << what << '\n';
    return 2;
}

std::optional<std::size_t> snapshot_index_at(const SimulationRecord& rec, double t) {
    for (std::size_t i = 0; i < rec.snapshots.size(); ++i)
        if (std::abs(rec.snapshots[i].t - t) <= 1e-9) return i;
    return std::nullopt;
}

// keep at most `cap` snapshot indices, always including the first and last
std::vector<std::size_t> thin_indices(std::size_t count, std::size_t cap) {
    std::vector<std::size_t> idx;
    if (count == 0) return idx;
    if (count <= cap) {
        for (std::size_t i = 0; i < count; ++i) idx.push_back(i);
        return idx;
    }
    for (std::size_t s = 0; s < cap; ++s)
        idx.push_back(s * (count - 1) / (cap - 1));
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return idx;
}

}  // namespace

int cmd_run(const CmdOptions& opt) {
    ScenarioSpec spec;
    try {
        spec = load_scenario_file(opt.config);
    } catch (const Error& e) {
        return config_error(e.what());
    }

    std::error_code ec;
    std::filesystem::create_directories(opt.out_dir, ec);
    if (ec) return config_error(("cannot create output dir: " + ec.message()).c_str());

    ManifestInfo manifest;
    manifest.label = spec.label;
    manifest.command = "run";
    manifest.parameter_dump = spec.dump();
    Stopwatch watch;

    SimulationRecord rec;
    try {
        const State initial = build_initial_state(spec);
        rec = run(initial, spec.ramp, spec.params, spec.boundary, spec.horizon_s,
                  spec.record_every, spec.label);
    } catch (const SolverError& e) {
        manifest.status = std::string("failed: ") + e.what();
        manifest.wall_clock_s = watch.seconds();
        write_manifest(opt.out_dir, manifest);
        std::cerr << "solver error: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        return config_error(e.what());
    }

    try {
        write_field_csv(rec, opt.out_dir / "field.csv");
        manifest.outputs.push_back("field.csv");
    } catch (const Error& e) {
        return config_error(e.what());
    }

    if (!opt.no_plots) {
        if (save_density_heatmap(rec, opt.out_dir / "heatmap_k.png"))
            manifest.outputs.push_back("heatmap_k.png");
        else if (!opt.quiet)
            std::cerr << "warning: heatmap rendering failed\n";
        for (double t_cross : {100.0, 200.0}) {
            const auto idx = snapshot_index_at(rec, t_cross);
            if (!idx) continue;
            const std::string name = "cross_t" + std::to_string(static_cast<int>(t_cross)) + ".png";
            if (save_cross_sections({{spec.label, rec.snapshots[*idx].k}}, rec.grid,
                                    spec.params.k_jam, opt.out_dir / name))
                manifest.outputs.push_back(name);
            else if (!opt.quiet)
                std::cerr << "warning: cross-section rendering failed\n";
        }
    }

    audit_summary(rec, manifest.audit_lines);
    manifest.wall_clock_s = watch.seconds();
    write_manifest(opt.out_dir, manifest);
    manifest.outputs.push_back("manifest.txt");

    if (!opt.quiet) {
        std::cout << "run '" << spec.label << "': " << rec.audits.size() << " steps, max CFL "
                  << fmt_g17(rec.max_cfl()) << ", outputs in " << opt.out_dir.string() << '\n';
        if (rec.cfl_warnings() > 0)
            std::cout << "warning: " << rec.cfl_warnings()
                      << " steps above the Courant target\n";
    }
    return 0;
}

int cmd_cases(const CmdOptions& opt) {
    ScenarioSpec base;
    try {
        base = load_scenario_file(opt.config);
    } catch (const Error& e) {
        return config_error(e.what());
    }

    std::error_code ec;
    std::filesystem::create_directories(opt.out_dir, ec);
    if (ec) return config_error(("cannot create output dir: " + ec.message()).c_str());

    ManifestInfo manifest;
    manifest.label = base.label;
    manifest.command = "cases";
    manifest.parameter_dump = base.dump();
    Stopwatch watch;

    struct CaseOutcome {
        SourceCase which;
        std::string error;  // empty = ok
        SimulationRecord rec;
    };
    std::vector<CaseOutcome> outcomes;

    for (int c = 1; c <= 4; ++c) {
        ScenarioSpec spec = base;
        spec.params.source_case = static_cast<SourceCase>(c);
        if (c >= 3)
            spec.ramp = RampConfig::interval(spec.ramp.a, spec.ramp.b, spec.params.a_in_max,
                                             spec.params.a_out_max);

        CaseOutcome outcome{static_cast<SourceCase>(c), "", {}};
        try {
            const State initial = build_initial_state(spec);
            outcome.rec = run(initial, spec.ramp, spec.params, spec.boundary, spec.horizon_s,
                              spec.record_every, std::string(to_string(outcome.which)));
        } catch (const SolverError& e) {
            outcome.error = e.what();
        } catch (const Error& e) {
            return config_error(e.what());
        }
        outcomes.push_back(std::move(outcome));
    }

    // report.csv: one row per (case, recorded time)
    {
        std::ofstream rep(opt.out_dir / "report.csv", std::ios::binary);
        rep << "case,t,tv_k,mass_veh,mass_change_veh,source_mass_cum_veh,"
               "ledger_residual_window_max,density_clamps_cum,velocity_clamps_cum\n";
        for (const auto& o : outcomes) {
            if (!o.error.empty()) continue;
            const auto ledger = mass_ledger(o.rec);
            const double dx = o.rec.grid.dx;
            double mass0 = 0.0;
            if (!o.rec.snapshots.empty())
                for (double k : o.rec.snapshots.front().k) mass0 += k * dx;
            std::size_t audit_cursor = 0;
            double source_cum = 0.0;
            double residual_window = 0.0;
            std::size_t dclamps = 0, vclamps = 0;
            for (const auto& snap : o.rec.snapshots) {
                const auto step_of_t =
                    static_cast<std::size_t>(std::lround(snap.t / o.rec.params.dt));
                residual_window = 0.0;
                while (audit_cursor < step_of_t && audit_cursor < ledger.size()) {
                    source_cum += ledger[audit_cursor].source_mass;
                    residual_window =
                        std::max(residual_window, std::abs(ledger[audit_cursor].residual));
                    dclamps += o.rec.audits[audit_cursor].density_clamps;
                    vclamps += o.rec.audits[audit_cursor].velocity_clamps;
                    ++audit_cursor;
                }
                double mass = 0.0;
                for (double k : snap.k) mass += k * dx;
                rep << static_cast<int>(o.which) << ',' << fmt_g17(snap.t) << ','
                    << fmt_g17(total_variation(snap)) << ',' << fmt_g17(mass) << ','
                    << fmt_g17(mass - mass0) << ',' << fmt_g17(source_cum) << ','
                    << fmt_g17(residual_window) << ',' << dclamps << ',' << vclamps << '\n';
            }
        }
        manifest.outputs.push_back("report.csv");
    }

    if (!opt.no_plots) {
        // 4-panel cross sections; thin very dense recordings to a handful
        const auto* reference =
            std::find_if(outcomes.begin(), outcomes.end(),
                         [](const CaseOutcome& o) { return o.error.empty(); });
        if (reference != outcomes.end()) {
            const auto indices = thin_indices(reference->rec.snapshots.size(), 9);
            for (const std::size_t si : indices) {
                const double t = reference->rec.snapshots[si].t;
                std::vector<CrossSeries> panels;
                for (const auto& o : outcomes) {
                    if (!o.error.empty()) continue;
                    const auto idx = snapshot_index_at(o.rec, t);
                    if (idx)
                        panels.push_back({std::string(to_string(o.which)),
                                          o.rec.snapshots[*idx].k});
                }
                char name[64];
                std::snprintf(name, sizeof name, "cases_cross_t%g.png", t);
                if (save_cross_sections(panels, reference->rec.grid, base.params.k_jam,
                                        opt.out_dir / name))
                    manifest.outputs.push_back(name);
            }
        }
    }

    bool case1_ok = false;
    for (const auto& o : outcomes) {
        std::string line = std::string(to_string(o.which)) + ": ";
        if (o.error.empty()) {
            line += "ok, max_cfl " + fmt_g17(o.rec.max_cfl()) + ", clamps " +
                    std::to_string(o.rec.total_density_clamps() +
                                   o.rec.total_velocity_clamps()) +
                    ", ledger_residual_max " + fmt_g17(max_abs_residual(mass_ledger(o.rec)));
            if (o.which == SourceCase::Case1) case1_ok = true;
        } else {
            line += "failed: " + o.error;
        }
        manifest.audit_lines.push_back(line);
        if (!opt.quiet) std::cout << line << '\n';
    }

    manifest.status = case1_ok ? "ok" : "failed: case1 did not complete";
    manifest.wall_clock_s = watch.seconds();
    write_manifest(opt.out_dir, manifest);
    return case1_ok ? 0 : 3;
}

int cmd_converge(const CmdOptions& opt) {
    ScenarioSpec spec;
    try {
        spec = load_scenario_file(opt.config);
    } catch (const Error& e) {
        return config_error(e.what());
    }

    // The study's preconditions: homogeneous system, no smoothing, periodic
    // wrap, a smooth datum, and a horizon before shocks form.
    spec.params.source_case = SourceCase::Case1;
    spec.params.smoothing_weight = 0.0;
    spec.boundary = BoundaryMode::Periodic;
    spec.horizon_s = 20.0;
    spec.ramp = RampConfig::interval(0.0, spec.params.road_length, 0.0, 0.0);
    if (spec.ic.kind != InitialCondition::Kind::UniformEquilibrium &&
        spec.ic.kind != InitialCondition::Kind::SinePerturbation)
        spec.ic = InitialCondition::sine(0.5, 0.05, 1);
    try {
        spec.validate();
    } catch (const Error& e) {
        return config_error(e.what());
    }

    std::error_code ec;
    std::filesystem::create_directories(opt.out_dir, ec);
    if (ec) return config_error(("cannot create output dir: " + ec.message()).c_str());

    ManifestInfo manifest;
    manifest.label = spec.label;
    manifest.command = "converge";
    manifest.parameter_dump = spec.dump();
    Stopwatch watch;

    const std::vector<int> levels{1, 2, 4, 8};
    std::vector<ConvergenceResult> results;
    try {
        results.push_back(convergence_study(spec, levels, Scheme::MacCormackCD));
        if (opt.with_oracle)
            results.push_back(convergence_study(spec, levels, Scheme::LaxFriedrichs));
    } catch (const SolverError& e) {
        manifest.status = std::string("failed: ") + e.what();
        manifest.wall_clock_s = watch.seconds();
        write_manifest(opt.out_dir, manifest);
        std::cerr << "solver error: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        return config_error(e.what());
    }

    {
        std::ofstream rep(opt.out_dir / "report.csv", std::ios::binary);
        rep << "scheme,level,dx_m,dt_s,l1_error,observed_order,exact\n";
        for (const auto& res : results) {
            for (std::size_t i = 0; i < res.levels.size(); ++i) {
                const auto& lv = res.levels[i];
                rep << to_string(res.scheme) << ',' << lv.refine << ',' << fmt_g17(lv.dx) << ','
                    << fmt_g17(lv.dt) << ',' << fmt_g17(lv.l1_error) << ',';
                if (i < res.observed_orders.size()) rep << fmt_g17(res.observed_orders[i]);
                rep << ',' << (res.exact ? "true" : "false") << '\n';
            }
        }
        manifest.outputs.push_back("report.csv");
    }

    for (const auto& res : results) {
        std::string line = std::string(to_string(res.scheme)) + ": ";
        if (res.exact) {
            line += "exact (errors at rounding level)";
        } else {
            line += "observed orders";
            for (double p : res.observed_orders) line += " " + fmt_g17(p);
        }
        manifest.audit_lines.push_back(line);
        if (!opt.quiet) std::cout << line << '\n';
    }

    manifest.wall_clock_s = watch.seconds();
    write_manifest(opt.out_dir, manifest);
    return 0;
}

}  // namespace arz
