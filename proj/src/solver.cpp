#include "arz/solver.hpp"

#include <cmath>
#include <cstddef>
#include <utility>

#include "arz/errors.hpp"

namespace arz {

namespace {

// Ghost-extended neighbor index for offsets of +/-1.
std::size_t ghost(std::ptrdiff_t i, std::size_t n, BoundaryMode mode) {
    const auto sn = static_cast<std::ptrdiff_t>(n);
    if (mode == BoundaryMode::Periodic) {
        if (i < 0) return n - 1;
        if (i >= sn) return 0;
        return static_cast<std::size_t>(i);
    }
    if (i < 0) return 0;
    if (i >= sn) return n - 1;
    return static_cast<std::size_t>(i);
}

void check_finite(const State& s, const char* stage) {
    for (std::size_t i = 0; i < s.n(); ++i)
        if (!std::isfinite(s.u1[i]) || !std::isfinite(s.u2[i])) throw NonFiniteError(stage, i);
}

}  // namespace

const char* to_string(BoundaryMode m) {
    return m == BoundaryMode::Periodic ? "periodic" : "zero_gradient";
}

double SimulationRecord::max_cfl() const {
    double m = 0.0;
    for (const auto& a : audits) m = std::max(m, a.cfl_observed);
    return m;
}

std::size_t SimulationRecord::total_density_clamps() const {
    std::size_t n = 0;
    for (const auto& a : audits) n += a.density_clamps;
    return n;
}

std::size_t SimulationRecord::total_velocity_clamps() const {
    std::size_t n = 0;
    for (const auto& a : audits) n += a.velocity_clamps;
    return n;
}

std::size_t SimulationRecord::cfl_warnings() const {
    std::size_t n = 0;
    for (const auto& a : audits) n += a.cfl_warning ? 1 : 0;
    return n;
}

ClampStats clamp_to_admissible(State& s, const ModelParams& p) {
    ClampStats st;
    for (std::size_t i = 0; i < s.n(); ++i) {
        const double k = s.u1[i];
        double k_cl = k;
        if (k < p.k_floor)
            k_cl = p.k_floor;
        else if (k > p.k_jam)
            k_cl = p.k_jam;
        if (k_cl != k) {
            ++st.density;
            st.mass_delta += (k_cl - k) * p.dx;
            s.u1[i] = k_cl;
        }
        const double v = s.u2[i] / k_cl - pressure(k_cl, p);
        double v_cl = v;
        if (v < 0.0)
            v_cl = 0.0;
        else if (v > p.v_max)
            v_cl = p.v_max;
        if (v_cl != v) {
            const double u2_new = k_cl * (v_cl + pressure(k_cl, p));
            // re-encoding at the bound can reproduce the old bits; only a real
            // change counts as a clamp
            if (u2_new != s.u2[i]) {
                ++st.velocity;
                s.u2[i] = u2_new;
            }
        }
    }
    return st;
}

double total_mass(const State& s, const ModelParams& p) {
    double m = 0.0;
    for (double k : s.u1) m += k;
    return m * p.dx;
}

double cfl_number(const State& s, const ModelParams& p) {
    double speed = 0.0;
    for (std::size_t i = 0; i < s.n(); ++i) {
        const WavePair w = eigenvalues(s.u1[i], s.u2[i], p);
        speed = std::max(speed, std::max(std::abs(w.lam1), std::abs(w.lam2)));
    }
    return speed * p.dt / p.dx;
}

StageResult predictor(const State& s, const RampConfig& ramp, const ModelParams& p,
                      BoundaryMode mode) {
    const std::size_t n = s.n();
    std::vector<double> f1(n), f2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Flux2 f = flux(s.u1[i], s.u2[i], p);
        f1[i] = f.f1;
        f2[i] = f.f2;
    }

    StageResult out;
    out.state.u1.resize(n);
    out.state.u2.resize(n);
    out.state.t = s.t + p.dt;  // provisional state lives at the next level

    const double lam = p.dt / p.dx;
    double r1_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t ip = ghost(static_cast<std::ptrdiff_t>(i) + 1, n, mode);
        const double x = (static_cast<double>(i) + 0.5) * p.dx;
        const Source2 r = source_vector(s.u1[i], s.u2[i], x, s.t, ramp, p);
        out.state.u1[i] = s.u1[i] - lam * (f1[ip] - f1[i]) + p.dt * r.r1;
        out.state.u2[i] = s.u2[i] - lam * (f2[ip] - f2[i]) + p.dt * r.r2;
        r1_sum += r.r1;
    }
    out.source_mass = p.dt * p.dx * r1_sum;
    if (mode == BoundaryMode::ZeroGradient) out.edge_flux_mass = -p.dt * (f1[n - 1] - f1[0]);

    check_finite(out.state, "predictor");
    out.clamps = clamp_to_admissible(out.state, p);
    return out;
}

StageResult corrector(const State& u_n, const State& provisional, const RampConfig& ramp,
                      const ModelParams& p, BoundaryMode mode) {
    const std::size_t n = u_n.n();
    std::vector<double> f1(n), f2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Flux2 f = flux(provisional.u1[i], provisional.u2[i], p);
        f1[i] = f.f1;
        f2[i] = f.f2;
    }

    StageResult out;
    out.state.u1.resize(n);
    out.state.u2.resize(n);
    out.state.t = u_n.t + p.dt;

    const double half_lam = 0.5 * p.dt / p.dx;
    double r1_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t im = ghost(static_cast<std::ptrdiff_t>(i) - 1, n, mode);
        double u1_new =
            0.5 * (provisional.u1[i] + u_n.u1[i]) - half_lam * (f1[i] - f1[im]);
        double u2_new =
            0.5 * (provisional.u2[i] + u_n.u2[i]) - half_lam * (f2[i] - f2[im]);
        if (p.source_in_corrector) {
            const double x = (static_cast<double>(i) + 0.5) * p.dx;
            const Source2 r =
                source_vector(provisional.u1[i], provisional.u2[i], x, provisional.t, ramp, p);
            u1_new += 0.5 * p.dt * r.r1;
            u2_new += 0.5 * p.dt * r.r2;
            r1_sum += r.r1;
        }
        out.state.u1[i] = u1_new;
        out.state.u2[i] = u2_new;
    }
    out.source_mass = 0.5 * p.dt * p.dx * r1_sum;
    if (mode == BoundaryMode::ZeroGradient)
        out.edge_flux_mass = -0.5 * p.dt * (f1[n - 1] - f1[0]);

    check_finite(out.state, "corrector");
    out.clamps = clamp_to_admissible(out.state, p);
    return out;
}

State smooth_cd(const State& s, const ModelParams& p, BoundaryMode mode) {
    const double S = p.smoothing_weight;
    if (S == 0.0) return s;  // bit-identical: no smoothing is plain MacCormack

    const std::size_t n = s.n();
    State out = s;
    // (1-S) U_i + S (U_{i+1} + U_{i-1})/2 written as a second-difference update,
    // which is exact on uniform data
    const double half_s = 0.5 * S;
    const std::size_t first = mode == BoundaryMode::Periodic ? 0 : 1;
    const std::size_t last = mode == BoundaryMode::Periodic ? n : n - 1;
    for (std::size_t i = first; i < last; ++i) {
        const std::size_t im = ghost(static_cast<std::ptrdiff_t>(i) - 1, n, mode);
        const std::size_t ip = ghost(static_cast<std::ptrdiff_t>(i) + 1, n, mode);
        out.u1[i] = s.u1[i] + half_s * (s.u1[ip] - 2.0 * s.u1[i] + s.u1[im]);
        out.u2[i] = s.u2[i] + half_s * (s.u2[ip] - 2.0 * s.u2[i] + s.u2[im]);
    }
    return out;
}

State apply_boundary(State s, BoundaryMode mode) {
    if (mode == BoundaryMode::ZeroGradient && s.n() >= 2) {
        const std::size_t n = s.n();
        s.u1[0] = s.u1[1];
        s.u2[0] = s.u2[1];
        s.u1[n - 1] = s.u1[n - 2];
        s.u2[n - 1] = s.u2[n - 2];
    }
    return s;
}

AdvanceResult advance(const State& s, const RampConfig& ramp, const ModelParams& p,
                      BoundaryMode mode) {
    StepAudit audit;
    audit.mass_before = total_mass(s, p);
    audit.cfl_observed = cfl_number(s, p);
    audit.cfl_warning = audit.cfl_observed > p.courant_target;
    // hard limit 1; the 1e-9 is roundoff slack so an admissible v = v_max state
    // (CFL exactly 1) is not rejected by its conversion noise
    if (audit.cfl_observed > 1.0 + 1e-9) throw CflViolation(audit.cfl_observed, 1.0);

    StageResult pred = predictor(s, ramp, p, mode);
    StageResult corr = corrector(s, pred.state, ramp, p, mode);

    const double mass_post_corrector = total_mass(corr.state, p);
    State smoothed = smooth_cd(corr.state, p, mode);
    check_finite(smoothed, "smoothing");
    const double mass_post_smoothing = total_mass(smoothed, p);
    const ClampStats smooth_clamps = clamp_to_admissible(smoothed, p);

    double copy_delta = 0.0;
    if (mode == BoundaryMode::ZeroGradient) {
        const std::size_t n = smoothed.n();
        copy_delta = (smoothed.u1[1] - smoothed.u1[0]) * p.dx +
                     (smoothed.u1[n - 2] - smoothed.u1[n - 1]) * p.dx;
    }
    State final_state = apply_boundary(std::move(smoothed), mode);
    final_state.t = s.t + p.dt;

    // The corrector averages the provisional state, so everything the
    // predictor added (sources, edge fluxes, clamp mass) reaches the final
    // state at half weight.
    audit.source_mass_injected = 0.5 * pred.source_mass + corr.source_mass;
    audit.boundary_flux_mass = 0.5 * pred.edge_flux_mass + corr.edge_flux_mass;
    audit.clamp_mass_delta =
        0.5 * pred.clamps.mass_delta + corr.clamps.mass_delta + smooth_clamps.mass_delta;
    audit.smoothing_mass_delta =
        mode == BoundaryMode::ZeroGradient ? mass_post_smoothing - mass_post_corrector : 0.0;
    audit.boundary_copy_mass_delta = mode == BoundaryMode::ZeroGradient ? copy_delta : 0.0;
    audit.density_clamps =
        pred.clamps.density + corr.clamps.density + smooth_clamps.density;
    audit.velocity_clamps =
        pred.clamps.velocity + corr.clamps.velocity + smooth_clamps.velocity;
    audit.mass_after = total_mass(final_state, p);

    return {std::move(final_state), audit};
}

FieldSnapshot snapshot_state(const State& s, const ModelParams& p) {
    FieldSnapshot snap;
    snap.t = s.t;
    snap.grid = Grid::from_params(p);
    snap.k.resize(s.n());
    snap.v.resize(s.n());
    for (std::size_t i = 0; i < s.n(); ++i) {
        const Prim w = primitive_from_conserved(s.u1[i], s.u2[i], p);
        snap.k[i] = w.k;
        snap.v[i] = w.v;
    }
    return snap;
}

SimulationRecord run(const State& initial, const RampConfig& ramp, const ModelParams& p,
                     BoundaryMode mode, double horizon_s, std::size_t record_every,
                     std::string label) {
    p.validate();
    const Grid grid = Grid::from_params(p);
    if (initial.n() != grid.n_cells)
        throw ValidationError("initial", "state has " + std::to_string(initial.n()) +
                                             " cells, grid expects " +
                                             std::to_string(grid.n_cells));
    if (horizon_s < 0.0) throw ValidationError("horizon_s", "must be nonnegative");
    const double steps_real = horizon_s / p.dt;
    const long n_steps = std::lround(steps_real);
    if (std::abs(steps_real - static_cast<double>(n_steps)) > 1e-9)
        throw ValidationError("horizon_s", "must be an integer number of steps");
    if (record_every == 0) throw ValidationError("record_every", "must be at least 1");

    SimulationRecord rec;
    rec.grid = grid;
    rec.params = p;
    rec.boundary = mode;
    rec.label = std::move(label);
    rec.snapshots.push_back(snapshot_state(initial, p));

    State current = initial;
    for (long step = 0; step < n_steps; ++step) {
        try {
            AdvanceResult res = advance(current, ramp, p, mode);
            current = std::move(res.state);
            res.audit.step_index = static_cast<std::size_t>(step);
            rec.audits.push_back(res.audit);
        } catch (SolverError& e) {
            e.set_step(step);
            throw;
        }
        if ((step + 1) % static_cast<long>(record_every) == 0)
            rec.snapshots.push_back(snapshot_state(current, p));
    }
    return rec;
}

}  // namespace arz
