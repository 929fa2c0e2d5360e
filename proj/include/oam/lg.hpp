#ifndef OAM_LG_HPP
#define OAM_LG_HPP

#include "oam/grid.hpp"

namespace oam {

// Gaussian-beam parameters. Two construction paths: from_waist derives the Rayleigh
// length, raw takes both (the device literature quotes them independently) and checks
// consistency only in checked().
struct BeamParams {
    double w0 = 0;          // beam waist, m
    double zr = 0;          // Rayleigh length, m
    double wavelength = 0;  // m

    static BeamParams from_waist(double w0, double wavelength);
    static BeamParams raw(double w0, double zr, double wavelength);
    // raw + consistency check zr == pi*w0^2/lambda within 1e-9 relative.
    static BeamParams checked(double w0, double zr, double wavelength);

    double waist_at(double z) const;      // w(z) = w0*sqrt(1+(z/zr)^2)
    double gouy_at(double z) const;       // atan(z/zr)
    double curvature_inv(double z) const; // 1/R(z); 0 at z = 0
    double k() const;                     // 2*pi/lambda
};

struct ModeIndex {
    int p = 0;  // radial index, >= 0
    int l = 0;  // azimuthal index, any sign
};

// Generalized Laguerre polynomial L_n^alpha(x), three-term recurrence.
double laguerre(int n, double alpha, double x);

// Unit-power LG_{p,l} complex amplitude at (x, y, z). Azimuthal convention e^{+i l theta};
// propagation convention e^{+i(kz - wt)}, so R(z) > 0 for z > 0 and the Gouy factor is
// e^{-i(2p+|l|+1) atan(z/zr)}. Exactly 0 on axis for l != 0.
cplx lg_amplitude(double x, double y, double z, const ModeIndex& mode, const BeamParams& beam);

// Sample LG_{p,l} on a grid, singularity displaced to (x0, y0). Analytic unit-power
// normalization; warns on stderr when the window holds < 99.9% of the mode power.
ComplexField lg_field(const PhysicalGrid& grid, double z, const ModeIndex& mode,
                      const BeamParams& beam, double x0 = 0.0, double y0 = 0.0);

// Fraction of mode power captured by the window (analytic radial integral).
double window_power_fraction(const PhysicalGrid& grid, const ModeIndex& mode,
                             const BeamParams& beam, double z = 0.0);

}  // namespace oam

#endif
