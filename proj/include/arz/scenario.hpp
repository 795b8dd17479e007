#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arz/params.hpp"
#include "arz/ramp.hpp"
#include "arz/record.hpp"
#include "arz/state.hpp"

namespace arz {

/// Initial density profile. Fractions are k/k_jam in [k_floor/k_jam, 1].
struct InitialCondition {
    enum class Kind { RiemannStep, UniformEquilibrium, Custom, SinePerturbation };

    Kind kind = Kind::RiemannStep;

    // RiemannStep; jump_at = 0 resolves to L/2 at build time. The cell whose
    // center sits exactly on the jump takes the right state.
    double left_fraction = 0.46;
    double right_fraction = 0.10;
    double jump_at = 0.0;  // [m]

    // UniformEquilibrium
    double fraction = 0.5;

    // Custom: (x [m], k fraction) knots, sorted by x, linearly interpolated.
    std::vector<std::pair<double, double>> knots;

    // SinePerturbation: (base + amplitude*sin(2 pi periods x/L)) * k_jam
    double base_fraction = 0.5;
    double amplitude_fraction = 0.05;
    int periods = 1;

    static InitialCondition ic1() { return riemann(0.46, 0.10); }
    static InitialCondition ic2() { return riemann(0.90, 0.55); }
    static InitialCondition riemann(double left_f, double right_f);
    static InitialCondition uniform(double f);
    static InitialCondition custom(std::vector<std::pair<double, double>> knots);
    static InitialCondition sine(double base_f, double amplitude_f, int periods = 1);

    /// Density [veh/m] at position x; jump_at defaults to L/2 for Riemann data.
    double density_at(double x, const ModelParams& p) const;

    void validate(const ModelParams& p) const;
    std::string describe() const;
};

/// A fully-resolved run: parameters, initial data, ramp, boundary handling,
/// horizon and recording cadence. Immutable value after load.
struct ScenarioSpec {
    ModelParams params;
    InitialCondition ic = InitialCondition::ic1();
    RampConfig ramp;  // zero intensities unless the case needs sources
    BoundaryMode boundary = BoundaryMode::ZeroGradient;
    double horizon_s = 200.0;
    std::size_t record_every = 1;
    std::optional<double> initial_speed;  // constant v(x,0) override [m/s]
    unsigned long seed = 0;               // for randomized property runs
    std::string label = "scenario";

    void validate() const;

    /// Canonical resolved-parameter dump (manifest body; byte-stable for the
    /// determinism check).
    std::string dump() const;
};

/// Sample the IC at cell centers; v(x,0) = V(k(x,0)) unless overridden.
State build_initial_state(const ScenarioSpec& spec);

/// Step data 0.46/0.10 k_jam split at L/2, equilibrium speeds.
State build_ic1(const ModelParams& p);

/// Step data 0.90/0.55 k_jam split at L/2, equilibrium speeds.
State build_ic2(const ModelParams& p);

/// Parse the flat key=value config format (UTF-8, one pair per line, '#'
/// comments, strict schema). Omitted keys take the reference defaults.
/// Throws ParseError, UnknownKeyError or ValidationError.
ScenarioSpec load_scenario(std::string_view config_text);

/// As load_scenario; custom IC paths resolve relative to the config file.
ScenarioSpec load_scenario_file(const std::filesystem::path& path);

}  // namespace arz
