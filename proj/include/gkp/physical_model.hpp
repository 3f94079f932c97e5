#pragma once

#include <optional>
#include <string>

// Apparatus model: atom presets, the cavity-geometry coupling relation,
// and the calibration tying the coherent amplitude, half-wave count,
// coupling and interaction time together.

namespace gkp::phys {

struct AtomSpecies {
    double mass;                    // kg
    double transition_wavelength;   // m (cavity resonant with the transition)
    double dipole_moment;           // C m
    std::string label;
};

// Cs D2-line parameters used throughout the reference configuration.
const AtomSpecies& cesium();

// Look up a preset by case-insensitive label ("cs"); empty if unknown.
std::optional<AtomSpecies> preset(const std::string& name);

// Load a species from a JSON file with keys mass, lambda0, d12, label.
AtomSpecies load_species(const std::string& path);

// How a user-supplied coupling number is interpreted.
enum class CouplingConvention {
    plain_per_second,  // "16 MHz" -> 1.6e7 1/s (default; reproduces alpha ~ 2.3)
    angular,           // "16 MHz" -> 2*pi*1.6e7 rad/s
};

double to_internal_coupling(double user_value, CouplingConvention conv);

struct PhysicalSetup {
    AtomSpecies species;
    double waist;              // m
    double coupling_g0;        // 1/s, internal convention
    double calibration_d;      // the D constant, 1/s
    double alpha;              // dimensionless coherent amplitude
    int half_wave_count;       // d, even, >= 2
    double interaction_time;   // s (chosen at the calibrated lower bound)
    double detuning;           // 1/s, from g0^2 t / delta = pi
    double mode_volume;        // m^3
    double velocity;           // m/s, v = 2 w0 / t
};

struct FeasibilityReport {
    double t_lower;            // s, large-detuning bound 2 pi alpha / g0
    double t_upper;            // s, Raman-Nath bound M lambda^2 / (pi hbar alpha^2)
    double chosen_t;           // s
    bool raman_nath_ok;        // chosen_t < t_upper
    bool large_detuning_ok;    // chosen_t >= t_lower
    double margin_lower;       // chosen_t / t_lower (1 at the calibrated choice)
    double margin_upper;       // chosen_t / t_upper
    std::string note;          // populated near the reference configuration
};

// D = 10^2 * 2 pi^2 hbar / (M lambda^2)
double compute_D(const AtomSpecies& species);

// alpha = cbrt(g0 / D)
double alpha_from_g0(double g0, double D);

// g0 = d12 sqrt(omega_c / (2 hbar eps0 V)), V = pi w0^2 d lambda / 2
double g0_from_geometry(const AtomSpecies& species, double waist, int half_wave_count);

// Inverse of g0_from_geometry, rounded to the nearest even integer >= 2.
// Throws std::domain_error when the geometry cannot host the coupling.
int d_from_g0(const AtomSpecies& species, double waist, double g0);

// Derive the full setup from (species, waist, g0).
PhysicalSetup derive_setup(const AtomSpecies& species, double waist, double g0);

FeasibilityReport check_feasibility(const PhysicalSetup& setup);

}  // namespace gkp::phys
