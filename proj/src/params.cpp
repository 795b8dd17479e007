#include "arz/params.hpp"

#include "arz/errors.hpp"

namespace arz {

namespace {

void require(bool ok, const char* field, const char* msg) {
    if (!ok) throw ValidationError(field, msg);
}

}  // namespace

void ModelParams::validate() const {
    require(road_length > 0.0, "road_length", "must be positive");
    require(v_max > 0.0, "v_max", "must be positive");
    require(k_jam > 0.0, "k_jam", "must be positive");
    require(k_floor > 0.0, "k_floor", "must be positive");
    require(k_cr_fraction > 0.0 && k_cr_fraction < 1.0, "k_cr_fraction", "must lie in (0, 1)");
    require(k_floor < k_cr(), "k_floor", "must be below the critical density");
    require(c0_sq >= 0.0, "c0_sq", "must be nonnegative");
    require(gamma >= 0.0, "gamma", "must be nonnegative");
    require(dt > 0.0, "dt", "must be positive");
    require(dx > 0.0, "dx", "must be positive");
    require(smoothing_weight >= 0.0 && smoothing_weight <= 1.0, "smoothing_weight",
            "must lie in [0, 1]");
    require(a_in_max >= 0.0, "a_in_max", "must be nonnegative");
    require(a_out_max >= 0.0, "a_out_max", "must be nonnegative");
    require(relaxation_time > 0.0, "relaxation_time", "must be positive");
    require(courant_target > 0.0 && courant_target <= 1.0, "courant_target",
            "must lie in (0, 1]");
}

const char* to_string(SourceCase c) {
    switch (c) {
        case SourceCase::Case1: return "case1";
        case SourceCase::Case2: return "case2";
        case SourceCase::Case3: return "case3";
        case SourceCase::Case4: return "case4";
    }
    return "?";
}

const char* to_string(PressureLaw law) {
    switch (law) {
        case PressureLaw::SonicPower: return "sonic";
        case PressureLaw::MoutariRascle: return "moutari_rascle";
    }
    return "?";
}

}  // namespace arz
