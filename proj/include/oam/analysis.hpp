#ifndef OAM_ANALYSIS_HPP
#define OAM_ANALYSIS_HPP

#include <vector>

#include "oam/hologram.hpp"
#include "oam/lg.hpp"

namespace oam {

// Azimuthal power decomposition of a field about a chosen center.
struct OamSpectrum {
    int L = 0;                     // band limit, indices -L..L
    std::vector<double> weights;   // size 2L+1, power fraction per l
    double residual = 0;           // power outside the band

    double weight_at(int l) const { return weights[static_cast<std::size_t>(l + L)]; }
    int argmax_l() const;
};

// Displaced-hologram-plus-single-mode-fiber projector.
struct AnalyzerSetting {
    int charge = 0;            // hologram charge
    double x0 = 0, y0 = 0;     // hologram displacement, m
    BeamParams fiber;          // Gaussian accepted by the fiber
};

// Angular Fourier analysis about `center` on a polar resampling of the field.
// Weights are normalized so that the full azimuthal decomposition sums to 1 exactly;
// residual = 1 - sum of in-band weights. Throws std::domain_error if the center lies
// outside the grid.
OamSpectrum oam_spectrum(const ComplexField& field, double cx, double cy, int L,
                         int n_radial = 400, int n_theta = 256);

// Coupling amplitude <fiber Gaussian | first-order output of the analyzer hologram
// applied to the field>. Ideal-device analyzer: the first order of a full-depth blaze
// carries the field times the bare spiral e^{i*charge*theta'} about the displacement,
// so no propagation step is needed. Insertion loss is normalized out.
cplx analyzer_amplitude(const ComplexField& field, const AnalyzerSetting& setting);

// Fiber waist maximizing |<Gaussian(w)|field>|^2, golden-section search.
double optimal_gaussian_waist(const ComplexField& field, double w_lo, double w_hi,
                              double rel_tol = 1e-3);

// Simulation context for crosstalk_matrix: source beam, SLM device path, order filter.
struct CrosstalkConfig {
    PhysicalGrid sim_grid;
    PhysicalGrid slm_grid;
    BeamParams beam;
    DeviceModel device = DeviceModel::ideal();
    double grating_ky = 2e4;      // rad/m
    double filter_radius = 1e4;   // rad/m
};

// Largest hologram charge the SLM grid can hold without phase aliasing at the beam
// radius.
int max_supported_charge(const PhysicalGrid& slm_grid, const BeamParams& beam);

// entry(i, j) = |analyzer_amplitude(LG00 transformed by charge transform_charges[i],
// analyzer_charges[j])|^2, row-normalized. Full render/apply/isolate pipeline per
// transform. Throws std::invalid_argument when a charge exceeds the band limit.
std::vector<std::vector<double>> crosstalk_matrix(const CrosstalkConfig& cfg,
                                                  const std::vector<int>& transform_charges,
                                                  const std::vector<int>& analyzer_charges);

// The transformed-and-isolated first-order field for one hologram charge (the
// per-row input of crosstalk_matrix), unit power.
ComplexField transformed_mode(const CrosstalkConfig& cfg, int charge);

}  // namespace oam

#endif
