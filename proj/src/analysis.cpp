#include "oam/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oam/propagate.hpp"

namespace oam {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Bilinear interpolation at a physical point; zero outside the window.
cplx sample_bilinear(const ComplexField& f, double x, double y) {
    const PhysicalGrid& g = f.grid;
    double fx = (x - g.x_min) / g.pitch_x() - 0.5;
    double fy = (y - g.y_min) / g.pitch_y() - 0.5;
    int i0 = static_cast<int>(std::floor(fx));
    int j0 = static_cast<int>(std::floor(fy));
    double u = fx - i0, v = fy - j0;
    cplx acc{0.0, 0.0};
    for (int dj = 0; dj <= 1; ++dj) {
        int j = j0 + dj;
        if (j < 0 || j >= g.ny) continue;
        double wy = dj ? v : 1.0 - v;
        for (int di = 0; di <= 1; ++di) {
            int i = i0 + di;
            if (i < 0 || i >= g.nx) continue;
            double wx = di ? u : 1.0 - u;
            acc += wx * wy * f.at(i, j);
        }
    }
    return acc;
}
}  // namespace

int OamSpectrum::argmax_l() const {
    auto it = std::max_element(weights.begin(), weights.end());
    return static_cast<int>(it - weights.begin()) - L;
}

OamSpectrum oam_spectrum(const ComplexField& field, double cx, double cy, int L, int n_radial,
                         int n_theta) {
    const PhysicalGrid& g = field.grid;
    if (cx < g.x_min || cx > g.x_max || cy < g.y_min || cy > g.y_max)
        throw std::domain_error("oam_spectrum: center outside grid");
    if (n_theta < 2 * (2 * L + 1))
        throw std::invalid_argument("oam_spectrum: n_theta too small for requested L");

    double r_max = std::min(std::min(cx - g.x_min, g.x_max - cx),
                            std::min(cy - g.y_min, g.y_max - cy));
    double dr = r_max / n_radial;

    // Ring-by-ring azimuthal DFT; Parseval over the full l alphabet gives the exact
    // normalizer, so in-band weights plus residual sum to 1 by construction.
    std::vector<double> cos_t(n_theta), sin_t(n_theta);
    for (int t = 0; t < n_theta; ++t) {
        cos_t[t] = std::cos(kTwoPi * t / n_theta);
        sin_t[t] = std::sin(kTwoPi * t / n_theta);
    }
    std::vector<std::vector<cplx>> twiddle(2 * L + 1, std::vector<cplx>(n_theta));
    for (int l = -L; l <= L; ++l)
        for (int t = 0; t < n_theta; ++t)
            twiddle[static_cast<std::size_t>(l + L)][t] =
                std::polar(1.0, -l * kTwoPi * t / n_theta);

    std::vector<double> raw(2 * L + 1, 0.0);
    double total = 0.0;
    std::vector<cplx> ring(n_theta);
    for (int m = 0; m < n_radial; ++m) {
        double r = (m + 0.5) * dr;
        double ring_power = 0.0;
        for (int t = 0; t < n_theta; ++t) {
            ring[t] = sample_bilinear(field, cx + r * cos_t[t], cy + r * sin_t[t]);
            ring_power += std::norm(ring[t]);
        }
        double measure = kTwoPi * r * dr;
        total += ring_power / n_theta * measure;
        for (int k = 0; k < 2 * L + 1; ++k) {
            cplx a{0.0, 0.0};
            const std::vector<cplx>& tw = twiddle[static_cast<std::size_t>(k)];
            for (int t = 0; t < n_theta; ++t) a += ring[t] * tw[t];
            a /= static_cast<double>(n_theta);
            raw[static_cast<std::size_t>(k)] += std::norm(a) * measure;
        }
    }

    OamSpectrum s;
    s.L = L;
    s.weights.assign(2 * L + 1, 0.0);
    if (total > 0.0) {
        double in_band = 0.0;
        for (int k = 0; k < 2 * L + 1; ++k) {
            s.weights[k] = raw[k] / total;
            in_band += s.weights[k];
        }
        s.residual = std::max(0.0, 1.0 - in_band);
    }
    return s;
}

cplx analyzer_amplitude(const ComplexField& field, const AnalyzerSetting& setting) {
    const PhysicalGrid& g = field.grid;
    ComplexField fiber = lg_field(g, 0.0, ModeIndex{0, 0}, setting.fiber);
    cplx acc{0.0, 0.0};
    for (int j = 0; j < g.ny; ++j) {
        double y = g.y_at(j) - setting.y0;
        for (int i = 0; i < g.nx; ++i) {
            double x = g.x_at(i) - setting.x0;
            double spiral = setting.charge * std::atan2(y, x);
            acc += std::conj(fiber.at(i, j)) * field.at(i, j) * std::polar(1.0, spiral);
        }
    }
    return acc * g.pixel_area();
}

double optimal_gaussian_waist(const ComplexField& field, double w_lo, double w_hi,
                              double rel_tol) {
    auto coupling = [&](double w) {
        AnalyzerSetting s;
        s.charge = 0;
        s.fiber = BeamParams::from_waist(w, field.wavelength);
        return std::norm(analyzer_amplitude(field, s));
    };
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = w_lo, b = w_hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = coupling(c), fd = coupling(d);
    while ((b - a) > rel_tol * a) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = coupling(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = coupling(d);
        }
    }
    return 0.5 * (a + b);
}

int max_supported_charge(const PhysicalGrid& slm_grid, const BeamParams& beam) {
    // Azimuthal phase step per pixel at the beam waist radius must stay below pi.
    double pitch = std::max(slm_grid.pitch_x(), slm_grid.pitch_y());
    return static_cast<int>(std::numbers::pi * beam.w0 / pitch);
}

ComplexField transformed_mode(const CrosstalkConfig& cfg, int charge) {
    ComplexField input = lg_field(cfg.sim_grid, 0.0, ModeIndex{0, 0}, cfg.beam);
    HologramSpec spec;
    spec.l = charge;
    spec.beam = cfg.beam;
    spec.ky = cfg.grating_ky;
    spec.wavelength = cfg.beam.wavelength;
    GrayImage img = render(spec, cfg.slm_grid);
    ComplexField after = apply_hologram(input, img, cfg.slm_grid, cfg.device);
    ComplexField iso = isolate_order(after, OrderFilter{0.0, cfg.grating_ky, cfg.filter_radius});
    return normalize(iso);
}

std::vector<std::vector<double>> crosstalk_matrix(const CrosstalkConfig& cfg,
                                                  const std::vector<int>& transform_charges,
                                                  const std::vector<int>& analyzer_charges) {
    int band = max_supported_charge(cfg.slm_grid, cfg.beam);
    for (int q : transform_charges)
        if (std::abs(q) > band)
            throw std::invalid_argument("crosstalk_matrix: charge " + std::to_string(q) +
                                        " exceeds the grid band limit " + std::to_string(band));

    std::vector<std::vector<double>> mat;
    mat.reserve(transform_charges.size());
    for (int q : transform_charges) {
        ComplexField mode = transformed_mode(cfg, q);
        std::vector<double> row;
        row.reserve(analyzer_charges.size());
        double row_sum = 0.0;
        for (int a : analyzer_charges) {
            AnalyzerSetting s;
            s.charge = a;
            s.fiber = cfg.beam;
            double p = std::norm(analyzer_amplitude(mode, s));
            row.push_back(p);
            row_sum += p;
        }
        if (row_sum > 0.0)
            for (double& p : row) p /= row_sum;
        mat.push_back(std::move(row));
    }
    return mat;
}

}  // namespace oam
