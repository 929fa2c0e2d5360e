#ifndef OAM_HOLOGRAM_HPP
#define OAM_HOLOGRAM_HPP

#include <cstdint>
#include <vector>

#include "oam/grid.hpp"
#include "oam/lg.hpp"

namespace oam {

// Full parameter set of one SLM phase pattern: singularity term, Fresnel lens term
// with astigmatism weight, and tilted-mirror grating.
struct HologramSpec {
    int l = 0;                       // hologram charge
    double x0 = 0, y0 = 0;           // singularity displacement, m
    BeamParams beam;                 // LG term beam parameters
    double z = 0;                    // LG term evaluation plane, m
    double lens_focal_mm = 0;        // 0 => lens term off
    double xl0 = 0, yl0 = 0;         // lens-term center, m
    double ast = 1.0;                // astigmatism weight on the x component
    double kx = 0, ky = 0;           // grating wavevector, rad/m
    double wavelength = 0;           // m
    int lens_sign = -1;              // -1: positive focal length converges under e^{+ikz}

    bool lens_on() const { return lens_focal_mm != 0.0; }
};

struct DeviceModel {
    double max_phase;     // radians at gray 255
    double fill_factor;   // modulated fraction of pixel area
    double reflectivity;  // power fraction
    int gray_levels = 256;

    static DeviceModel ideal();     // 2*pi, fill 1, reflectivity 1
    static DeviceModel lcr2500();   // 1.8*pi, fill 0.90, reflectivity 0.75
};

struct GrayImage {
    int width = 0, height = 0;
    std::vector<std::uint8_t> values;  // row-major, row 0 = top = y_max

    std::uint8_t at(int i, int j) const {
        return values[static_cast<std::size_t>(j) * width + i];
    }
};

// Continuous phase in [0, 2pi): mod(arg(LG) + lens + grating, 2pi). Mathematical
// modulo, result nonnegative.
double ideal_phase(const HologramSpec& spec, double x, double y);

// floor(phase * 256 / 2pi), clamped to 255.
std::uint8_t quantize(double phase);

// Quantized phase at every pixel center of the SLM grid. Row 0 of the image is the
// y_max edge. Bit-deterministic.
GrayImage render(const HologramSpec& spec, const PhysicalGrid& slm_grid);

// Linear device response gray/255 * max_phase.
double device_phase(std::uint8_t gray, const DeviceModel& device);

// Embedding of the SLM window in the simulation window: physical offset of the SLM
// center relative to the simulation-grid origin.
struct Placement {
    double x_offset = 0, y_offset = 0;
};

// Reflect a field off the SLM showing `image` on `slm_grid`. Modulated central
// fraction of each pixel gets e^{i*device_phase}; the dead border strip reflects with
// zero phase; everything picks up sqrt(reflectivity). Throws std::invalid_argument if
// the SLM window does not fit in the field's grid.
ComplexField apply_hologram(const ComplexField& input, const GrayImage& image,
                            const PhysicalGrid& slm_grid, const DeviceModel& device,
                            const Placement& placement = {});

// Power fraction in diffraction order m of a sawtooth blaze rendered with `levels`
// quantization steps and the device's phase depth; excludes reflectivity/fill.
double blaze_order_power(const DeviceModel& device, int levels, int order);

// Order +1 fraction including reflectivity and the fill-factor area model.
double first_order_efficiency(const DeviceModel& device, int levels);

}  // namespace oam

#endif
