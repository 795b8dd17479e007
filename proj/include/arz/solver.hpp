#pragma once

#include <cstddef>
#include <string>

#include "arz/model.hpp"
#include "arz/record.hpp"
#include "arz/state.hpp"

namespace arz {

/// Clamping activity of one stage. mass_delta is the signed density mass
/// added by the clamps [veh].
struct ClampStats {
    std::size_t density = 0;
    std::size_t velocity = 0;
    double mass_delta = 0.0;
};

/// One stage's output plus its audit contributions. source_mass is the
/// analytic mass this stage's R samples add [veh]; edge_flux_mass is the
/// analytic flux imbalance at the domain edges (0 under Periodic).
struct StageResult {
    State state;
    ClampStats clamps;
    double source_mass = 0.0;
    double edge_flux_mass = 0.0;
};

/// Clamp u1 to [k_floor, k_jam] and the recovered v to [0, v_max], re-encoding
/// u2 when v moved. Counts only clamps that changed bits.
ClampStats clamp_to_admissible(State& s, const ModelParams& p);

/// Total density mass sum(u1)*dx [veh].
double total_mass(const State& s, const ModelParams& p);

/// Courant number max_i max(|lam1|, |lam2|) * dt/dx of the current state.
double cfl_number(const State& s, const ModelParams& p);

/// Forward-differenced predictor: U~_i = U_i - dt/dx [F(U_{i+1}) - F(U_i)]
/// + dt R(U_i), ghost-extended per BoundaryMode, clamped and audited.
/// Throws NonFiniteError on blow-up.
StageResult predictor(const State& s, const RampConfig& ramp, const ModelParams& p,
                      BoundaryMode mode);

/// Backward-differenced corrector on the provisional state, averaged with U^n:
/// U_i^{n+1} = 0.5[U~_i + U_i] - 0.5 dt/dx [F~_i - F~_{i-1}]. Adds
/// 0.5 dt R(U~_i) only when source_in_corrector is set.
StageResult corrector(const State& u_n, const State& provisional, const RampConfig& ramp,
                      const ModelParams& p, BoundaryMode mode);

/// Central-dispersion smoothing on both conserved components:
/// U_i <- (1-S) U_i + S (U_{i+1} + U_{i-1})/2 on interior cells. Edge cells
/// are skipped under ZeroGradient and wrapped under Periodic. S = 0 returns
/// the input bit-identically.
State smooth_cd(const State& s, const ModelParams& p, BoundaryMode mode);

/// Edge copies: first cell takes the second, last takes the second-to-last
/// (ZeroGradient). No-op under Periodic, where the wrap lives in the stencils.
State apply_boundary(State s, BoundaryMode mode);

struct AdvanceResult {
    State state;
    StepAudit audit;
};

/// One full step: CFL guard, predictor, corrector, CD smoothing, boundary
/// copies; t advances by dt. Throws CflViolation if the pre-step Courant
/// number exceeds 1, NonFiniteError if any stage blows up.
AdvanceResult advance(const State& s, const RampConfig& ramp, const ModelParams& p,
                      BoundaryMode mode);

/// Repeated advance over horizon_s (must be an integer number of steps;
/// horizon 0 records just the initial snapshot). Snapshots are taken every
/// record_every steps plus the initial one. Solver errors are rethrown with
/// the failing step index attached.
SimulationRecord run(const State& initial, const RampConfig& ramp, const ModelParams& p,
                     BoundaryMode mode, double horizon_s, std::size_t record_every = 1,
                     std::string label = "");

/// Snapshot of the primitive fields of a state.
FieldSnapshot snapshot_state(const State& s, const ModelParams& p);

}  // namespace arz
