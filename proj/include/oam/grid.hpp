#ifndef OAM_GRID_HPP
#define OAM_GRID_HPP

#include <complex>
#include <stdexcept>
#include <vector>

namespace oam {

using cplx = std::complex<double>;

// Uniformly sampled 2-D spatial window. Pixel centers: x(i) = x_min + (i+0.5)*pitch_x.
// i indexes columns (x), j indexes rows (y); storage of associated fields is row-major,
// index = j*nx + i.
struct PhysicalGrid {
    int nx = 0, ny = 0;
    double x_min = 0, x_max = 0;
    double y_min = 0, y_max = 0;

    PhysicalGrid() = default;
    PhysicalGrid(int nx_, int ny_, double x_min_, double x_max_, double y_min_, double y_max_);

    double pitch_x() const { return (x_max - x_min) / nx; }
    double pitch_y() const { return (y_max - y_min) / ny; }
    double pixel_area() const { return pitch_x() * pitch_y(); }
    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }

    double x_at(int i) const { return x_min + (i + 0.5) * pitch_x(); }
    double y_at(int j) const { return y_min + (j + 0.5) * pitch_y(); }

    // Bounds-checked pixel-center coordinates.
    std::pair<double, double> coordinates(int i, int j) const;

    // Nearest pixel index to a physical point (no bounds clamp).
    int nearest_i(double x) const;
    int nearest_j(double y) const;

    bool operator==(const PhysicalGrid& o) const {
        return nx == o.nx && ny == o.ny && x_min == o.x_min && x_max == o.x_max &&
               y_min == o.y_min && y_max == o.y_max;
    }
};

// Complex scalar amplitude sampled on a PhysicalGrid. Monochromatic transverse mode.
struct ComplexField {
    PhysicalGrid grid;
    double wavelength = 0;               // meters
    std::vector<cplx> values;            // row-major, size grid.nx*grid.ny

    ComplexField() = default;
    ComplexField(const PhysicalGrid& g, double wavelength_m);

    cplx& at(int i, int j) { return values[static_cast<std::size_t>(j) * grid.nx + i]; }
    const cplx& at(int i, int j) const { return values[static_cast<std::size_t>(j) * grid.nx + i]; }
};

// Midpoint Riemann sum of |v|^2 over the window. Fixed left-to-right accumulation
// order so results are reproducible.
double total_power(const ComplexField& f);

// Scale to unit power. Throws std::domain_error on a zero-power field.
ComplexField normalize(const ComplexField& f);

// <a|b> = sum conj(a)*b*dA. Throws std::invalid_argument on grid/wavelength mismatch.
cplx mode_overlap(const ComplexField& a, const ComplexField& b);

// |<a|b>|^2 / (P_a * P_b); 1 for identical fields up to scale and global phase.
double fidelity(const ComplexField& a, const ComplexField& b);

}  // namespace oam

#endif
