#ifndef OAM_PROPAGATE_HPP
#define OAM_PROPAGATE_HPP

#include "oam/grid.hpp"

namespace oam {

enum class PropagationMethod { AngularSpectrum, FresnelTF };

struct PropagationPlan {
    double distance = 0;  // m, signed
    PropagationMethod method = PropagationMethod::AngularSpectrum;
    double padding_factor = 2.0;  // >= 1
};

// Spatial-frequency disk selecting one diffraction order.
struct OrderFilter {
    double kx = 0, ky = 0;  // disk center, rad/m
    double radius = 0;      // rad/m
};

// Thrown when grid sampling cannot support the requested propagation distance.
struct AliasingError : std::runtime_error {
    double max_safe_distance;
    AliasingError(const std::string& msg, double max_safe)
        : std::runtime_error(msg), max_safe_distance(max_safe) {}
};

// Free-space scalar propagation by the transfer-function method. Angular-spectrum
// kernel e^{i z sqrt(k^2 - kx^2 - ky^2)} with evanescent components zeroed; Fresnel
// kernel e^{ikz} e^{-iz(kx^2+ky^2)/2k}. Zero-padded by plan.padding_factor; checks the
// lateral-walkoff bound of the field's occupied bandwidth and throws AliasingError
// naming the maximum safe distance.
ComplexField propagate(const ComplexField& field, const PropagationPlan& plan);

// Quadratic thin-lens phase e^{-i k r^2 / 2f}. Power conserved exactly.
ComplexField thin_lens(const ComplexField& field, double focal_m);

// Zero the spectrum outside the filter disk and re-center it at zero frequency
// (spectral shift by -center), so downstream analysis sees an on-axis beam.
ComplexField isolate_order(const ComplexField& field, const OrderFilter& filter);

}  // namespace oam

#endif
