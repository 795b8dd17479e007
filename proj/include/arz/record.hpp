#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "arz/grid.hpp"
#include "arz/params.hpp"

namespace arz {

/// How ghost cells extend the domain and how Eq.-style edge copies apply.
/// ZeroGradient mirrors the edge cell (no sudden variation at the boundary);
/// Periodic wraps the stencils and is used for exact-conservation tests.
enum class BoundaryMode { ZeroGradient, Periodic };

const char* to_string(BoundaryMode m);

/// Primitive fields at one recorded time.
struct FieldSnapshot {
    double t = 0.0;
    std::vector<double> k;  // [veh/m]
    std::vector<double> v;  // [m/s]
    Grid grid;
};

/// Everything one advance() did to the mass budget and the admissible range.
/// mass deltas are in vehicles; the ledger identity is
///   mass_after - mass_before = source_mass_injected + boundary_flux_mass
///                            + smoothing_mass_delta + boundary_copy_mass_delta
///                            + clamp_mass_delta + residual,
/// with residual at rounding level. Under Periodic the four correction terms
/// are exactly zero by construction, not measured.
struct StepAudit {
    std::size_t step_index = 0;
    double cfl_observed = 0.0;
    bool cfl_warning = false;       // above courant_target
    std::size_t density_clamps = 0;
    std::size_t velocity_clamps = 0;
    double mass_before = 0.0;
    double mass_after = 0.0;
    double source_mass_injected = 0.0;   // stage-weighted R samples
    double boundary_flux_mass = 0.0;     // edge-flux imbalance (ZeroGradient)
    double smoothing_mass_delta = 0.0;   // CD edge leak (ZeroGradient)
    double boundary_copy_mass_delta = 0.0;  // edge-copy delta (ZeroGradient)
    double clamp_mass_delta = 0.0;       // stage-weighted clamping delta
};

/// Spatiotemporal history of a run: primitive snapshots at the recording
/// cadence plus the per-step audits.
struct SimulationRecord {
    Grid grid;
    ModelParams params;
    BoundaryMode boundary = BoundaryMode::ZeroGradient;
    std::string label;
    std::vector<FieldSnapshot> snapshots;
    std::vector<StepAudit> audits;

    double max_cfl() const;
    std::size_t total_density_clamps() const;
    std::size_t total_velocity_clamps() const;
    std::size_t cfl_warnings() const;
};

}  // namespace arz
