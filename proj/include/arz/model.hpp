#pragma once

#include "arz/params.hpp"
#include "arz/ramp.hpp"

namespace arz {

// Pure functions of the model. All are safe to call from any thread.

struct Cons {
    double u1;  // k [veh/m]
    double u2;  // k*(v + p(k)) [veh/s]
};

struct Prim {
    double k;  // [veh/m]
    double v;  // [m/s]
};

struct Flux2 {
    double f1;  // k*v [veh/s]
    double f2;  // k*v*(v + p(k)) = v*u2 [veh m/s^2]
};

struct Source2 {
    double r1;  // [veh/m/s]
    double r2;
};

struct WavePair {
    double lam1;  // v - k*p'(k) [m/s]
    double lam2;  // v [m/s]
};

/// Traffic pressure p(k) [m/s]. Total on k >= 0; monotone nondecreasing for
/// the default law.
double pressure(double k, const ModelParams& p);

/// k*p'(k) [m/s] — the gap lam2 - lam1 between the characteristic speeds.
/// Continuous at k = 0 (limit 0) even for gamma < 1.
double eigenvalue_gap(double k, const ModelParams& p);

/// Equilibrium (preferred) speed V(k), Greenshields: v_max*(1 - k/k_jam).
/// Throws DomainError outside [0, k_jam].
double equilibrium_speed(double k, const ModelParams& p);

/// Net per-length inflow rate A(k) = a_in - (a_in + a_out)*k/k_jam [veh/m/s].
double source_strength(double k, double a_in, double a_out, const ModelParams& p);

/// Indicator of the closed ramp interval [a, b].
int ramp_indicator(double x, const RampConfig& ramp);

/// U = [k, k*(v + p(k))]. Throws DomainError outside k in [k_floor, k_jam],
/// v in [0, v_max].
Cons conserved_from_primitive(double k, double v, const ModelParams& p);

/// Exact algebraic inverse: v = u2/u1 - p(u1), not clamped here. Throws
/// DomainError if u1 < k_floor (the caller clamps first).
Prim primitive_from_conserved(double u1, double u2, const ModelParams& p);

/// F(U) = [k*v, v*u2].
Flux2 flux(double u1, double u2, const ModelParams& p);

/// R(U) for the active SourceCase, sampling the ramp intensities at (t, x).
/// Case4 is built from the same subterms as Case2 and Case3, so it equals
/// their componentwise sum exactly.
Source2 source_vector(double u1, double u2, double x, double t, const RampConfig& ramp,
                      const ModelParams& p);

/// Characteristic speeds (lam1, lam2) with lam1 <= lam2 = v for the default law.
WavePair eigenvalues(double u1, double u2, const ModelParams& p);

}  // namespace arz
