#include "oam/entangle.hpp"

#include <cmath>
#include <random>

#include "oam/propagate.hpp"

namespace oam {

TwoPhotonState TwoPhotonState::max_entangled_qutrit() {
    TwoPhotonState s;
    s.L = 1;
    double a = 1.0 / std::sqrt(3.0);
    s.amplitudes = {cplx{a, 0}, cplx{a, 0}, cplx{a, 0}};
    return s;
}

TwoPhotonState TwoPhotonState::gaussian_band(int L, double sigma) {
    if (L < 0 || !(sigma > 0)) throw std::invalid_argument("gaussian_band: bad parameters");
    TwoPhotonState s;
    s.L = L;
    s.amplitudes.resize(2 * L + 1);
    double norm2 = 0.0;
    for (int l = -L; l <= L; ++l) {
        double a = std::exp(-0.5 * l * l / (sigma * sigma));
        s.amplitudes[static_cast<std::size_t>(l + L)] = cplx{a, 0};
        norm2 += a * a;
    }
    double inv = 1.0 / std::sqrt(norm2);
    for (cplx& c : s.amplitudes) c *= inv;
    return s;
}

void TwoPhotonState::check() const {
    if (amplitudes.size() != static_cast<std::size_t>(2 * L + 1))
        throw std::invalid_argument("TwoPhotonState: amplitude count mismatch");
    double n = 0.0;
    for (const cplx& c : amplitudes) n += std::norm(c);
    if (std::abs(n - 1.0) > 1e-12)
        throw std::invalid_argument("TwoPhotonState: state not normalized");
}

namespace {

// Apply the SLM transform chain to a mode field. Ideal optics keeps the continuous
// phase (grating and order selection cancel); otherwise render, reflect, isolate.
ComplexField apply_transform(const ExperimentConfig& cfg, const ComplexField& mode) {
    ComplexField f = mode;
    for (const HologramSpec& spec : cfg.idler_transform) {
        if (cfg.ideal_optics) {
            HologramSpec s = spec;
            s.kx = 0.0;
            s.ky = 0.0;
            for (int j = 0; j < f.grid.ny; ++j)
                for (int i = 0; i < f.grid.nx; ++i)
                    f.at(i, j) *= std::polar(1.0, ideal_phase(s, f.grid.x_at(i), f.grid.y_at(j)));
        } else {
            HologramSpec s = spec;
            s.ky = cfg.grating_ky;
            GrayImage img = render(s, cfg.slm_grid);
            ComplexField after = apply_hologram(f, img, cfg.slm_grid, cfg.device);
            f = normalize(
                isolate_order(after, OrderFilter{0.0, cfg.grating_ky, cfg.filter_radius}));
        }
    }
    return f;
}

// Normalized analyzer amplitude vector over the band for one arm.
std::vector<cplx> arm_amplitudes(const ExperimentConfig& cfg, const AnalyzerSetting& setting,
                                 bool through_slm) {
    const int L = cfg.state.L;
    std::vector<cplx> amps(2 * L + 1);
    double norm2 = 0.0;
    for (int l = -L; l <= L; ++l) {
        ComplexField mode = lg_field(cfg.grid, 0.0, ModeIndex{0, l}, cfg.beam);
        if (through_slm) mode = apply_transform(cfg, mode);
        cplx a = analyzer_amplitude(mode, setting);
        amps[static_cast<std::size_t>(l + L)] = a;
        norm2 += std::norm(a);
    }
    // An arm that couples nothing in the band stays dark; normalizing the numerical
    // residue (~1e-16 per amplitude) would turn it into a spurious unit vector.
    if (norm2 > 1e-20) {
        double inv = 1.0 / std::sqrt(norm2);
        for (cplx& a : amps) a *= inv;
    } else {
        for (cplx& a : amps) a = cplx{0.0, 0.0};
    }
    return amps;
}

double probability_from_arms(const TwoPhotonState& state, const std::vector<cplx>& sig,
                             const std::vector<cplx>& idl) {
    const int L = state.L;
    cplx acc{0.0, 0.0};
    for (int l = -L; l <= L; ++l)
        acc += state.amplitude(l) * sig[static_cast<std::size_t>(l + L)] *
               idl[static_cast<std::size_t>(-l + L)];
    return std::norm(acc);
}

}  // namespace

double coincidence_probability(const ExperimentConfig& config, int signal_coupler,
                               int idler_coupler) {
    config.state.check();
    if (signal_coupler < 0 ||
        signal_coupler >= static_cast<int>(config.signal_analyzers.size()) ||
        idler_coupler < 0 || idler_coupler >= static_cast<int>(config.idler_analyzers.size()))
        throw std::out_of_range("coincidence_probability: coupler index out of range");
    std::vector<cplx> sig =
        arm_amplitudes(config, config.signal_analyzers[static_cast<std::size_t>(signal_coupler)],
                       false);
    std::vector<cplx> idl =
        arm_amplitudes(config, config.idler_analyzers[static_cast<std::size_t>(idler_coupler)],
                       true);
    return probability_from_arms(config.state, sig, idl);
}

namespace {

CorrelationTable sweep(const ExperimentConfig& base,
                       const std::vector<ExperimentConfig>& variants,
                       std::vector<std::string> names) {
    CorrelationTable table;
    table.setting_names = std::move(names);
    for (std::size_t si = 0; si < base.signal_analyzers.size(); ++si)
        for (std::size_t ii = 0; ii < base.idler_analyzers.size(); ++ii)
            table.channels.emplace_back(static_cast<int>(si), static_cast<int>(ii));
    table.prob.assign(table.channels.size(), std::vector<double>(variants.size(), 0.0));

    // Signal-arm amplitudes do not depend on the SLM setting.
    std::vector<std::vector<cplx>> sig;
    sig.reserve(base.signal_analyzers.size());
    for (const AnalyzerSetting& s : base.signal_analyzers)
        sig.push_back(arm_amplitudes(base, s, false));

    for (std::size_t v = 0; v < variants.size(); ++v) {
        std::vector<std::vector<cplx>> idl;
        idl.reserve(base.idler_analyzers.size());
        for (const AnalyzerSetting& s : base.idler_analyzers)
            idl.push_back(arm_amplitudes(variants[v], s, true));
        for (std::size_t c = 0; c < table.channels.size(); ++c) {
            auto [si, ii] = table.channels[c];
            table.prob[c][v] = probability_from_arms(
                base.state, sig[static_cast<std::size_t>(si)], idl[static_cast<std::size_t>(ii)]);
        }
    }
    return table;
}

}  // namespace

CorrelationTable correlation_table_charge_sweep(const ExperimentConfig& config,
                                                const std::vector<int>& slm_charges) {
    config.state.check();
    if (config.idler_transform.empty())
        throw std::invalid_argument("charge sweep: config needs an idler transform spec");
    std::vector<ExperimentConfig> variants;
    std::vector<std::string> names;
    for (int q : slm_charges) {
        ExperimentConfig c = config;
        c.idler_transform[0].l = q;
        variants.push_back(std::move(c));
        names.push_back("slm_l=" + std::to_string(q));
    }
    return sweep(config, variants, std::move(names));
}

CorrelationTable correlation_table_displacement_sweep(const ExperimentConfig& config,
                                                      int slm_charge,
                                                      const std::vector<double>& x0_values) {
    config.state.check();
    if (config.idler_transform.empty())
        throw std::invalid_argument("displacement sweep: config needs an idler transform spec");
    std::vector<ExperimentConfig> variants;
    std::vector<std::string> names;
    for (double x0 : x0_values) {
        ExperimentConfig c = config;
        c.idler_transform[0].l = slm_charge;
        c.idler_transform[0].x0 = x0;
        variants.push_back(std::move(c));
        names.push_back("x0=" + std::to_string(x0));
    }
    return sweep(config, variants, std::move(names));
}

double visibility(const CorrelationTable& table, int channel) {
    if (channel < 0 || channel >= static_cast<int>(table.channels.size()))
        throw std::out_of_range("visibility: channel out of range");
    const std::vector<double>& row = table.prob[static_cast<std::size_t>(channel)];
    if (row.size() < 2) throw std::invalid_argument("visibility: need at least 2 settings");
    double lo = row[0], hi = row[0];
    for (double p : row) {
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    if (hi <= 0.0) throw std::domain_error("visibility: all-zero channel");
    return (hi - lo) / (hi + lo);
}

std::vector<std::vector<std::uint64_t>> sample_counts(const CorrelationTable& table,
                                                      double scale, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::uint64_t>> counts(table.prob.size());
    for (std::size_t c = 0; c < table.prob.size(); ++c) {
        counts[c].resize(table.prob[c].size());
        for (std::size_t v = 0; v < table.prob[c].size(); ++v) {
            double mean = table.prob[c][v] * scale;
            if (mean <= 0.0) {
                counts[c][v] = 0;
            } else {
                std::poisson_distribution<std::uint64_t> dist(mean);
                counts[c][v] = dist(rng);
            }
        }
    }
    return counts;
}

}  // namespace oam
