#pragma once

#include <string>

namespace arz {

/// Which terms of R(U) are active. Case1 = homogeneous system, Case2 = velocity
/// relaxation only, Case3 = ramp source/sink only, Case4 = both.
enum class SourceCase { Case1 = 1, Case2 = 2, Case3 = 3, Case4 = 4 };

/// Traffic pressure law. SonicPower is p(k) = C0^2 k^gamma - phi; MoutariRascle
/// is the piecewise v_ref-scaled variant (selectable, not used by default).
enum class PressureLaw { SonicPower, MoutariRascle };

/// All physical and numerical constants of a run. Defaults are the desk-scale
/// reference setup: 1200 m road, 30 m/s free speed, 0.15 veh/m jam density,
/// dt = 1 s, dx = 30 m, CD smoothing weight 0.01.
struct ModelParams {
    double road_length = 1200.0;   // L [m]
    double v_max = 30.0;           // free-flow speed [m/s]
    double k_jam = 0.15;           // jam density [veh/m]
    double k_cr_fraction = 0.2667; // critical density as fraction of k_jam (reporting only)
    double c0_sq = 80.0;           // C0^2 [m^2/s^2], sonic-speed squared in the pressure law
    double phi = 31.9;             // pressure offset [m/s]
    double gamma = 0.5;            // pressure exponent, dimensionless
    double dt = 1.0;               // time step [s]
    double dx = 30.0;              // cell width [m]
    double smoothing_weight = 0.01; // S in [0,1]; 0 = plain MacCormack
    double a_in_max = 0.003;       // max entry intensity [veh/m/s]
    double a_out_max = 0.001;      // max exit intensity [veh/m/s]
    double relaxation_time = 2.0;  // delta [s]
    double courant_target = 0.9;   // warn above this Courant number
    double k_floor = 1e-8;         // vacuum guard [veh/m]
    SourceCase source_case = SourceCase::Case1;
    bool source_in_corrector = false; // opt-in balanced corrector source (non-default)
    PressureLaw pressure_law = PressureLaw::SonicPower;

    double k_cr() const { return k_cr_fraction * k_jam; }

    /// Throws ValidationError naming the offending field.
    void validate() const;
};

const char* to_string(SourceCase c);
const char* to_string(PressureLaw law);

}  // namespace arz
