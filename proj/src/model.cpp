#include "arz/model.hpp"

#include <cmath>
#include <string>

#include "arz/errors.hpp"

namespace arz {

double pressure(double k, const ModelParams& p) {
    if (p.pressure_law == PressureLaw::MoutariRascle) {
        const double fraction = k / p.k_jam;
        if (p.gamma > 0.0) return p.v_max / p.gamma * std::pow(fraction, p.gamma);
        return -p.v_max * std::log(fraction);
    }
    // pow(0, 0) = 1, so gamma = 0 degenerates to the constant c0_sq - phi everywhere
    return p.c0_sq * std::pow(k, p.gamma) - p.phi;
}

double eigenvalue_gap(double k, const ModelParams& p) {
    if (p.pressure_law == PressureLaw::MoutariRascle) {
        const double fraction = k / p.k_jam;
        if (p.gamma > 0.0) return p.v_max * std::pow(fraction, p.gamma);
        return -p.v_max;  // as printed; see the alternate-law notes in README
    }
    return p.c0_sq * p.gamma * std::pow(k, p.gamma);
}

double equilibrium_speed(double k, const ModelParams& p) {
    if (k < 0.0 || k > p.k_jam)
        throw DomainError("equilibrium_speed: k = " + std::to_string(k) +
                          " outside [0, k_jam]");
    return p.v_max * (1.0 - k / p.k_jam);
}

double source_strength(double k, double a_in, double a_out, const ModelParams& p) {
    return a_in - (a_in + a_out) * k / p.k_jam;
}

int ramp_indicator(double x, const RampConfig& ramp) {
    return (x >= ramp.a && x <= ramp.b) ? 1 : 0;
}

Cons conserved_from_primitive(double k, double v, const ModelParams& p) {
    if (k < p.k_floor || k > p.k_jam)
        throw DomainError("conserved_from_primitive: k = " + std::to_string(k) +
                          " outside [k_floor, k_jam]");
    if (v < 0.0 || v > p.v_max)
        throw DomainError("conserved_from_primitive: v = " + std::to_string(v) +
                          " outside [0, v_max]");
    return {k, k * (v + pressure(k, p))};
}

Prim primitive_from_conserved(double u1, double u2, const ModelParams& p) {
    if (u1 < p.k_floor)
        throw DomainError("primitive_from_conserved: u1 = " + std::to_string(u1) +
                          " below k_floor");
    return {u1, u2 / u1 - pressure(u1, p)};
}

Flux2 flux(double u1, double u2, const ModelParams& p) {
    const Prim w = primitive_from_conserved(u1, u2, p);
    return {u1 * w.v, w.v * u2};
}

Source2 source_vector(double u1, double u2, double x, double t, const RampConfig& ramp,
                      const ModelParams& p) {
    if (p.source_case == SourceCase::Case1) return {0.0, 0.0};

    const Prim w = primitive_from_conserved(u1, u2, p);

    // Case4 must equal Case2 + Case3 exactly, so every case reuses these
    // subterms unmodified.
    switch (p.source_case) {
        case SourceCase::Case2:
            return {0.0, u1 * (equilibrium_speed(u1, p) - w.v) / p.relaxation_time};
        case SourceCase::Case3: {
            const int chi = ramp_indicator(x, ramp);
            const double a_in = chi ? ramp.g_in.value(t) : 0.0;
            const double a_out = chi ? ramp.g_out.value(t) : 0.0;
            const double strength = source_strength(u1, a_in, a_out, p);
            return {strength, (w.v + pressure(u1, p)) * strength};
        }
        case SourceCase::Case4: {
            const int chi = ramp_indicator(x, ramp);
            const double a_in = chi ? ramp.g_in.value(t) : 0.0;
            const double a_out = chi ? ramp.g_out.value(t) : 0.0;
            const double strength = source_strength(u1, a_in, a_out, p);
            const double relax = u1 * (equilibrium_speed(u1, p) - w.v) / p.relaxation_time;
            return {strength, (w.v + pressure(u1, p)) * strength + relax};
        }
        default:
            return {0.0, 0.0};
    }
}

WavePair eigenvalues(double u1, double u2, const ModelParams& p) {
    const Prim w = primitive_from_conserved(u1, u2, p);
    return {w.v - eigenvalue_gap(u1, p), w.v};
}

}  // namespace arz
