#include "oam/hologram.hpp"

#include <cmath>
#include <numbers>

namespace oam {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double mod_two_pi(double phase) {
    double m = std::fmod(phase, kTwoPi);
    if (m < 0.0) m += kTwoPi;
    if (m >= kTwoPi) m = 0.0;
    return m;
}
}  // namespace

DeviceModel DeviceModel::ideal() { return DeviceModel{kTwoPi, 1.0, 1.0, 256}; }
DeviceModel DeviceModel::lcr2500() { return DeviceModel{1.8 * kPi, 0.90, 0.75, 256}; }

double ideal_phase(const HologramSpec& spec, double x, double y) {
    double phase = 0.0;
    if (spec.l != 0 || spec.z != 0.0) {
        if (spec.z == 0.0) {
            // arg(LG) at z=0 is the bare spiral; the radial factor is real positive.
            phase += spec.l * std::atan2(y - spec.y0, x - spec.x0);
        } else {
            phase += std::arg(lg_amplitude(x - spec.x0, y - spec.y0, spec.z,
                                           ModeIndex{0, spec.l}, spec.beam));
        }
    }
    if (spec.lens_on()) {
        double dx = x - spec.xl0, dy = y - spec.yl0;
        phase += spec.lens_sign * (kPi * 1e3 / spec.wavelength) / spec.lens_focal_mm *
                 (spec.ast * dx * dx + dy * dy);
    }
    phase += x * spec.kx + y * spec.ky;
    return mod_two_pi(phase);
}

std::uint8_t quantize(double phase) {
    int g = static_cast<int>(std::floor(phase * 256.0 / kTwoPi));
    if (g < 0) g = 0;
    if (g > 255) g = 255;
    return static_cast<std::uint8_t>(g);
}

GrayImage render(const HologramSpec& spec, const PhysicalGrid& slm_grid) {
    GrayImage img;
    img.width = slm_grid.nx;
    img.height = slm_grid.ny;
    img.values.resize(slm_grid.size());
    for (int jr = 0; jr < slm_grid.ny; ++jr) {
        double y = slm_grid.y_at(slm_grid.ny - 1 - jr);  // row 0 = top = y_max
        for (int i = 0; i < slm_grid.nx; ++i) {
            img.values[static_cast<std::size_t>(jr) * slm_grid.nx + i] =
                quantize(ideal_phase(spec, slm_grid.x_at(i), y));
        }
    }
    return img;
}

double device_phase(std::uint8_t gray, const DeviceModel& device) {
    return static_cast<double>(gray) / 255.0 * device.max_phase;
}

ComplexField apply_hologram(const ComplexField& input, const GrayImage& image,
                            const PhysicalGrid& slm_grid, const DeviceModel& device,
                            const Placement& placement) {
    if (image.width != slm_grid.nx || image.height != slm_grid.ny)
        throw std::invalid_argument("apply_hologram: image does not match SLM grid");
    const double px = placement.x_offset, py = placement.y_offset;
    const PhysicalGrid& fg = input.grid;
    if (slm_grid.x_min + px < fg.x_min || slm_grid.x_max + px > fg.x_max ||
        slm_grid.y_min + py < fg.y_min || slm_grid.y_max + py > fg.y_max)
        throw std::invalid_argument("apply_hologram: SLM placement outside field grid");

    const double border = 0.5 * (1.0 - std::sqrt(device.fill_factor));
    const double ramp = std::sqrt(device.reflectivity);

    ComplexField out = input;
    for (int j = 0; j < fg.ny; ++j) {
        double yl = fg.y_at(j) - py;
        for (int i = 0; i < fg.nx; ++i) {
            double xl = fg.x_at(i) - px;
            cplx factor{ramp, 0.0};
            if (xl >= slm_grid.x_min && xl < slm_grid.x_max && yl >= slm_grid.y_min &&
                yl < slm_grid.y_max) {
                double fx = (xl - slm_grid.x_min) / slm_grid.pitch_x();
                double fy = (yl - slm_grid.y_min) / slm_grid.pitch_y();
                int is = std::min(static_cast<int>(fx), slm_grid.nx - 1);
                int js = std::min(static_cast<int>(fy), slm_grid.ny - 1);
                double u = fx - is, v = fy - js;
                if (u >= border && u < 1.0 - border && v >= border && v < 1.0 - border) {
                    std::uint8_t g = image.at(is, slm_grid.ny - 1 - js);
                    factor = std::polar(ramp, device_phase(g, device));
                }
            }
            out.at(i, j) *= factor;
        }
    }
    return out;
}

double blaze_order_power(const DeviceModel& device, int levels, int order) {
    if (levels < 2) throw std::invalid_argument("blaze_order_power: levels must be >= 2");
    // Exact Fourier coefficient of the piecewise-constant quantized sawtooth:
    // phi(u) = floor(u*L)/(L-1) * max_phase on [0,1).
    const int L = levels;
    cplx acc{0.0, 0.0};
    for (int q = 0; q < L; ++q) {
        double phi = static_cast<double>(q) / (L - 1) * device.max_phase;
        cplx e = std::polar(1.0, phi);
        if (order == 0) {
            acc += e / static_cast<double>(L);
        } else {
            double a = kTwoPi * order * q / L;
            double b = kTwoPi * order * (q + 1) / L;
            cplx seg = (std::polar(1.0, -b) - std::polar(1.0, -a)) / cplx(0.0, -kTwoPi * order);
            acc += e * seg;
        }
    }
    return std::norm(acc);
}

double first_order_efficiency(const DeviceModel& device, int levels) {
    // Dead pixel borders reflect unmodulated and carry no grating phase, so only the
    // modulated area fraction contributes coherently to order +1.
    return device.reflectivity * device.fill_factor * device.fill_factor *
           blaze_order_power(device, levels, +1);
}

}  // namespace oam
