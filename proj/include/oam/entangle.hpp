#ifndef OAM_ENTANGLE_HPP
#define OAM_ENTANGLE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "oam/analysis.hpp"

namespace oam {

// OAM Schmidt-form two-photon state: sum_l c_l |l>_signal |-l>_idler.
struct TwoPhotonState {
    int L = 0;
    std::vector<cplx> amplitudes;  // size 2L+1, index l+L

    static TwoPhotonState max_entangled_qutrit();
    // |c_l| proportional to exp(-l^2 / (2 sigma^2)), normalized.
    static TwoPhotonState gaussian_band(int L, double sigma);

    cplx amplitude(int l) const { return amplitudes[static_cast<std::size_t>(l + L)]; }
    void check() const;  // sum |c_l|^2 = 1 within 1e-12
};

struct ExperimentConfig {
    TwoPhotonState state = TwoPhotonState::max_entangled_qutrit();
    std::vector<AnalyzerSetting> signal_analyzers;
    std::vector<AnalyzerSetting> idler_analyzers;
    std::vector<HologramSpec> idler_transform;  // SLM path ahead of the idler analyzer

    PhysicalGrid grid;   // evaluation grid for all mode functions
    BeamParams beam;     // SPDC mode parameters

    // Ideal optics applies transform phases analytically; otherwise the transform is
    // rendered on slm_grid, applied with the device model, and the first order isolated.
    bool ideal_optics = true;
    DeviceModel device = DeviceModel::ideal();
    PhysicalGrid slm_grid;
    double grating_ky = 2e4;
    double filter_radius = 1e4;
};

// P = |sum_l c_l A_s(l) A_i(-l)|^2 with per-arm amplitude vectors normalized over the
// band (probabilities conditioned on detection).
double coincidence_probability(const ExperimentConfig& config, int signal_coupler,
                               int idler_coupler);

struct CorrelationTable {
    std::vector<std::string> setting_names;
    std::vector<std::pair<int, int>> channels;    // (signal coupler, idler coupler)
    std::vector<std::vector<double>> prob;        // [channel][setting]
};

// Sweep the SLM transform charge; all coupler pairs.
CorrelationTable correlation_table_charge_sweep(const ExperimentConfig& config,
                                                const std::vector<int>& slm_charges);

// Sweep the SLM singularity displacement x0 at a fixed charge.
CorrelationTable correlation_table_displacement_sweep(const ExperimentConfig& config,
                                                      int slm_charge,
                                                      const std::vector<double>& x0_values);

// (max - min)/(max + min) over the sweep for one channel. Throws std::domain_error on
// an all-zero channel.
double visibility(const CorrelationTable& table, int channel);

// Seeded Poisson count rendering: counts ~ Poisson(prob * scale).
std::vector<std::vector<std::uint64_t>> sample_counts(const CorrelationTable& table,
                                                      double scale, std::uint64_t seed);

}  // namespace oam

#endif
