#ifndef OAM_DEFAULTS_HPP
#define OAM_DEFAULTS_HPP

#include "oam/grid.hpp"

namespace oam::defaults {

// Source
inline constexpr double wavelength_m = 702e-9;

// SLM panel: 1024 x 768 pixels over 19.5 x 14.6 mm^2 (19.04 x 19.01 um pitch)
inline constexpr int slm_nx = 1024;
inline constexpr int slm_ny = 768;
inline constexpr double slm_x_half_m = 0.0098;
inline constexpr double slm_y_half_m = 0.0073;

// Device response
inline constexpr double max_phase_rad = 1.8 * 3.14159265358979323846;
inline constexpr double fill_factor = 0.90;
inline constexpr double reflectivity = 0.75;

// Fixed glass lenses of the optical train
inline constexpr double f1_m = 0.250;
inline constexpr double f2_m = -0.030;
inline constexpr double f3_m = 0.100;
inline constexpr double f4_m = 0.750;

// SLM lens term: mode-matching focal length and the transformation-series settings
inline constexpr double f_slm_modematch_mm = 940.0;
inline constexpr double f_slm_transform_mm = 131.0;
inline constexpr double grating_ky_rad_per_m = 2e4;

// Simulation substrate: square grid with padding, hologram embedded centered
inline constexpr int sim_n = 1024;
inline constexpr double sim_half_m = 0.0098;

inline PhysicalGrid slm_grid() {
    return PhysicalGrid(slm_nx, slm_ny, -slm_x_half_m, slm_x_half_m, -slm_y_half_m, slm_y_half_m);
}

inline PhysicalGrid sim_grid() {
    return PhysicalGrid(sim_n, sim_n, -sim_half_m, sim_half_m, -sim_half_m, sim_half_m);
}

}  // namespace oam::defaults

#endif
