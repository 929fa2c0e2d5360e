#include "oam/propagate.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace oam {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void fft2(std::vector<cplx>& v, int nx, int ny, int sign) {
    fftw_plan plan = fftw_plan_dft_2d(ny, nx, reinterpret_cast<fftw_complex*>(v.data()),
                                      reinterpret_cast<fftw_complex*>(v.data()), sign,
                                      FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    if (sign == FFTW_BACKWARD) {
        double s = 1.0 / (static_cast<double>(nx) * ny);
        for (cplx& c : v) c *= s;
    }
}

// FFT bin frequency in rad/m.
double kfreq(int idx, int n, double pitch) {
    int m = (idx <= n / 2) ? idx : idx - n;
    return kTwoPi * m / (n * pitch);
}

// Smallest |k_perp| radius outside which less than `tail` of the spectral power lives.
double occupied_bandwidth(const std::vector<cplx>& spec, int nx, int ny, double px, double py,
                          double tail) {
    const int nbins = 512;
    double kmax = std::hypot(kTwoPi / (2.0 * px), kTwoPi / (2.0 * py));
    std::vector<double> hist(nbins, 0.0);
    double total = 0.0;
    for (int j = 0; j < ny; ++j) {
        double ky = kfreq(j, ny, py);
        for (int i = 0; i < nx; ++i) {
            double kr = std::hypot(kfreq(i, nx, px), ky);
            double p = std::norm(spec[static_cast<std::size_t>(j) * nx + i]);
            int b = std::min(static_cast<int>(kr / kmax * nbins), nbins - 1);
            hist[b] += p;
            total += p;
        }
    }
    if (total == 0.0) return 0.0;
    double acc = 0.0;
    for (int b = nbins - 1; b >= 0; --b) {
        acc += hist[b];
        if (acc > tail * total) return (b + 1) * kmax / nbins;
    }
    return 0.0;
}
}  // namespace

ComplexField propagate(const ComplexField& field, const PropagationPlan& plan) {
    if (plan.padding_factor < 1.0)
        throw std::invalid_argument("propagate: padding_factor must be >= 1");
    if (plan.distance == 0.0) return field;

    const PhysicalGrid& g = field.grid;
    int pnx = std::max(g.nx, static_cast<int>(std::lround(g.nx * plan.padding_factor)));
    int pny = std::max(g.ny, static_cast<int>(std::lround(g.ny * plan.padding_factor)));
    pnx += pnx % 2;
    pny += pny % 2;
    const int ox = (pnx - g.nx) / 2, oy = (pny - g.ny) / 2;
    const double px = g.pitch_x(), py = g.pitch_y();
    const double k0 = kTwoPi / field.wavelength;

    std::vector<cplx> buf(static_cast<std::size_t>(pnx) * pny, cplx{0.0, 0.0});
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            buf[static_cast<std::size_t>(j + oy) * pnx + (i + ox)] = field.at(i, j);

    fft2(buf, pnx, pny, FFTW_FORWARD);

    // Wrap-around check: the steepest occupied plane wave walks z*k_perp/kz sideways;
    // it must stay within the padding margin plus half the original window.
    double k_occ = occupied_bandwidth(buf, pnx, pny, px, py, 1e-8);
    if (k_occ > 0.0 && k_occ < k0) {
        double margin = 0.5 * (pnx * px - g.nx * px) + 0.25 * g.nx * px;
        double walk_per_m = k_occ / std::sqrt(k0 * k0 - k_occ * k_occ);
        if (walk_per_m > 0.0) {
            double max_safe = margin / walk_per_m;
            if (std::abs(plan.distance) > max_safe)
                throw AliasingError(
                    "propagate: distance " + std::to_string(plan.distance) +
                        " m exceeds the aliasing-safe bound " + std::to_string(max_safe) +
                        " m for this grid; increase padding_factor or the window",
                    max_safe);
        }
    }

    for (int j = 0; j < pny; ++j) {
        double ky = kfreq(j, pny, py);
        for (int i = 0; i < pnx; ++i) {
            double kx = kfreq(i, pnx, px);
            double kr2 = kx * kx + ky * ky;
            cplx& c = buf[static_cast<std::size_t>(j) * pnx + i];
            if (plan.method == PropagationMethod::AngularSpectrum) {
                double kz2 = k0 * k0 - kr2;
                if (kz2 <= 0.0) {
                    c = 0.0;  // evanescent, truncated
                } else {
                    c *= std::polar(1.0, plan.distance * std::sqrt(kz2));
                }
            } else {
                c *= std::polar(1.0, plan.distance * (k0 - 0.5 * kr2 / k0));
            }
        }
    }

    fft2(buf, pnx, pny, FFTW_BACKWARD);

    ComplexField out(g, field.wavelength);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out.at(i, j) = buf[static_cast<std::size_t>(j + oy) * pnx + (i + ox)];
    return out;
}

ComplexField thin_lens(const ComplexField& field, double focal_m) {
    if (focal_m == 0.0) throw std::domain_error("thin_lens: zero focal length");
    const double k0 = kTwoPi / field.wavelength;
    ComplexField out = field;
    for (int j = 0; j < field.grid.ny; ++j) {
        double y = field.grid.y_at(j);
        for (int i = 0; i < field.grid.nx; ++i) {
            double x = field.grid.x_at(i);
            out.at(i, j) *= std::polar(1.0, -0.5 * k0 * (x * x + y * y) / focal_m);
        }
    }
    return out;
}

ComplexField isolate_order(const ComplexField& field, const OrderFilter& filter) {
    if (!(filter.radius > 0)) throw std::invalid_argument("isolate_order: radius must be > 0");
    const PhysicalGrid& g = field.grid;
    double knyq_x = kTwoPi / (2.0 * g.pitch_x());
    double knyq_y = kTwoPi / (2.0 * g.pitch_y());
    if (std::abs(filter.kx) + filter.radius > knyq_x ||
        std::abs(filter.ky) + filter.radius > knyq_y)
        throw std::invalid_argument(
            "isolate_order: filter disk extends outside the sampled frequency window");

    // Demodulate by the carrier first; the disk is then centered at zero frequency,
    // which performs the exact spectral shift by -center.
    ComplexField out(g, field.wavelength);
    for (int j = 0; j < g.ny; ++j) {
        double y = g.y_at(j);
        for (int i = 0; i < g.nx; ++i) {
            double x = g.x_at(i);
            out.at(i, j) = field.at(i, j) * std::polar(1.0, -(filter.kx * x + filter.ky * y));
        }
    }
    fft2(out.values, g.nx, g.ny, FFTW_FORWARD);
    double r2 = filter.radius * filter.radius;
    for (int j = 0; j < g.ny; ++j) {
        double ky = kfreq(j, g.ny, g.pitch_y());
        for (int i = 0; i < g.nx; ++i) {
            double kx = kfreq(i, g.nx, g.pitch_x());
            if (kx * kx + ky * ky > r2) out.at(i, j) = 0.0;
        }
    }
    fft2(out.values, g.nx, g.ny, FFTW_BACKWARD);
    return out;
}

}  // namespace oam
