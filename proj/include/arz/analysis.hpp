#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "arz/ramp.hpp"
#include "arz/record.hpp"
#include "arz/scenario.hpp"
#include "arz/state.hpp"

namespace arz {

/// Root-mean-square density error between two snapshots on the same grid at
/// the same time. Throws GridMismatch otherwise.
double rmse(const FieldSnapshot& predicted, const FieldSnapshot& observed);

/// sum_i |k_{i+1} - k_i| — the oscillation proxy.
double total_variation(const std::vector<double>& field);
double total_variation(const FieldSnapshot& snapshot);

/// One step's mass balance: residual = (mass_after - mass_before)
/// - source_mass - correction, where correction collects the audited
/// boundary/smoothing/copy/clamp terms (all exactly zero under Periodic).
struct LedgerEntry {
    std::size_t step = 0;
    double mass_before = 0.0;
    double mass_after = 0.0;
    double source_mass = 0.0;
    double correction = 0.0;
    double residual = 0.0;
};

std::vector<LedgerEntry> mass_ledger(const SimulationRecord& record);
double max_abs_residual(const std::vector<LedgerEntry>& ledger);

/// Structurally independent first-order reference solver:
/// U_i^{n+1} = (U_{i+1} + U_{i-1})/2 - dt/(2 dx) [F_{i+1} - F_{i-1}] + dt R_i,
/// sharing only the model functions with the MacCormack path. Same clamping
/// and audit conventions as run().
SimulationRecord lax_friedrichs_oracle(const State& initial, const RampConfig& ramp,
                                       const ModelParams& p, BoundaryMode mode,
                                       double horizon_s, std::size_t record_every = 1,
                                       std::string label = "lax-friedrichs");

/// Density comparison of a record against reference snapshots at matching times.
struct ComparisonReport {
    std::vector<std::pair<double, double>> rmse_by_time;  // (t, rmse veh/m)
    std::vector<std::pair<double, double>> tv_by_time;    // (t, TV veh/m)
    double max_abs_error = 0.0;
};

ComparisonReport compare_records(const SimulationRecord& predicted,
                                 const std::vector<FieldSnapshot>& observed);

enum class Scheme { MacCormackCD, LaxFriedrichs };

struct ConvergenceLevel {
    int refine = 1;
    double dx = 0.0;
    double dt = 0.0;
    double l1_error = 0.0;  // mean |k - k_ref| vs the finest grid [veh/m]
};

/// Self-convergence against the finest level. Orders are solved from the
/// reference-corrected model e_r = C (h_r^p - h_ref^p) on successive error
/// pairs, which is exact for power-law errors (a naive log2 ratio against the
/// finest grid overestimates low-order schemes).
struct ConvergenceResult {
    Scheme scheme = Scheme::MacCormackCD;
    std::vector<ConvergenceLevel> levels;
    std::vector<double> observed_orders;
    bool exact = false;  // all errors at rounding level; order undefined
};

/// Runs the scenario at refinements r (dx/r, dt/r: fixed CFL) and measures
/// L1 self-convergence. Callers provide a smooth datum (sine or uniform),
/// Case1 and S = 0 per the study's preconditions.
ConvergenceResult convergence_study(const ScenarioSpec& spec, const std::vector<int>& levels,
                                    Scheme scheme);

/// x where the density profile first crosses (max+min)/2, linearly
/// interpolated; the wave-front position proxy for monotone fronts.
double front_midpoint_position(const FieldSnapshot& snapshot);

const char* to_string(Scheme s);

}  // namespace arz
