#include "oam/grid.hpp"

#include <cmath>

namespace oam {

PhysicalGrid::PhysicalGrid(int nx_, int ny_, double x_min_, double x_max_, double y_min_,
                           double y_max_)
    : nx(nx_), ny(ny_), x_min(x_min_), x_max(x_max_), y_min(y_min_), y_max(y_max_) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("PhysicalGrid: need nx,ny >= 2");
    if (!(x_max > x_min) || !(y_max > y_min))
        throw std::invalid_argument("PhysicalGrid: extents must satisfy max > min");
    if (!std::isfinite(pitch_x()) || !std::isfinite(pitch_y()))
        throw std::invalid_argument("PhysicalGrid: non-finite pitch");
}

std::pair<double, double> PhysicalGrid::coordinates(int i, int j) const {
    if (i < 0 || i >= nx || j < 0 || j >= ny)
        throw std::out_of_range("PhysicalGrid::coordinates: index out of range");
    return {x_at(i), y_at(j)};
}

int PhysicalGrid::nearest_i(double x) const {
    return static_cast<int>(std::floor((x - x_min) / pitch_x()));
}

int PhysicalGrid::nearest_j(double y) const {
    return static_cast<int>(std::floor((y - y_min) / pitch_y()));
}

ComplexField::ComplexField(const PhysicalGrid& g, double wavelength_m)
    : grid(g), wavelength(wavelength_m), values(g.size(), cplx{0.0, 0.0}) {
    if (!(wavelength > 0)) throw std::invalid_argument("ComplexField: wavelength must be > 0");
}

double total_power(const ComplexField& f) {
    double acc = 0.0;
    for (const cplx& v : f.values) acc += std::norm(v);
    return acc * f.grid.pixel_area();
}

ComplexField normalize(const ComplexField& f) {
    double p = total_power(f);
    if (p <= 0.0) throw std::domain_error("normalize: zero-power field");
    ComplexField out = f;
    double s = 1.0 / std::sqrt(p);
    for (cplx& v : out.values) v *= s;
    return out;
}

cplx mode_overlap(const ComplexField& a, const ComplexField& b) {
    if (!(a.grid == b.grid) || a.wavelength != b.wavelength)
        throw std::invalid_argument("mode_overlap: grid or wavelength mismatch");
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k < a.values.size(); ++k) acc += std::conj(a.values[k]) * b.values[k];
    return acc * a.grid.pixel_area();
}

double fidelity(const ComplexField& a, const ComplexField& b) {
    double pa = total_power(a), pb = total_power(b);
    if (pa <= 0.0 || pb <= 0.0) throw std::domain_error("fidelity: zero-power field");
    return std::norm(mode_overlap(a, b)) / (pa * pb);
}

}  // namespace oam
