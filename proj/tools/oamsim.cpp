// oamsim: hologram synthesis, beam transformation, coincidence and efficiency
// runs driven by a JSON config with unit-suffixed keys. Deterministic given
// config + seed; every run writes a manifest with resolved parameters and
// content hashes of the produced files.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <string>

#include "oam/analysis.hpp"
#include "oam/defaults.hpp"
#include "oam/entangle.hpp"
#include "oam/hologram.hpp"
#include "oam/io.hpp"
#include "oam/lg.hpp"
#include "oam/propagate.hpp"

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr const char* kVersion = "oamsim 1.0.0";

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Defaults for every config block; merging user config on top of this document and
// rejecting keys absent from it gives both fallback and unknown-key detection.
json default_config() {
    json d;
    d["grid"] = {{"nx", oam::defaults::sim_n},
                 {"ny", oam::defaults::sim_n},
                 {"x_half_m", oam::defaults::sim_half_m},
                 {"y_half_m", oam::defaults::sim_half_m}};
    d["slm"] = {{"nx", oam::defaults::slm_nx},
                {"ny", oam::defaults::slm_ny},
                {"x_half_m", oam::defaults::slm_x_half_m},
                {"y_half_m", oam::defaults::slm_y_half_m}};
    d["beam"] = {{"w0_m", 1.5e-3}, {"wavelength_nm", 702.0}};
    d["hologram"] = {{"l", 0},          {"x0_m", 0.0},   {"y0_m", 0.0},
                     {"z_m", 0.0},      {"lens_focal_mm", 0.0}, {"xl0_m", 0.0},
                     {"yl0_m", 0.0},    {"ast", 1.0},    {"kx_rad_per_m", 0.0},
                     {"ky_rad_per_m", oam::defaults::grating_ky_rad_per_m},
                     {"lens_sign", -1}};
    d["device"] = {{"max_phase_pi", 1.8},
                   {"fill_factor", oam::defaults::fill_factor},
                   {"reflectivity", oam::defaults::reflectivity}};
    d["propagation"] = {{"distance_m", 0.0}, {"method", "angular_spectrum"},
                        {"padding_factor", 2.0}};
    d["filter"] = {{"radius_rad_per_m", 1e4}};
    d["beam_run"] = {{"input_l", 0}, {"spectrum_L", 10}};
    d["experiment"] = {{"state", "qutrit"},
                       {"state_L", 1},
                       {"state_sigma", 1.0},
                       {"signal_charges", json::array({0, -1})},
                       {"idler_charges", json::array({0, 1})},
                       {"slm_charges", json::array({-1, 0, 1})},
                       {"counts_scale", 1000.0}};
    return d;
}

void merge_checked(json& base, const json& user, const std::string& path) {
    for (auto it = user.begin(); it != user.end(); ++it) {
        std::string here = path.empty() ? it.key() : path + "." + it.key();
        if (!base.contains(it.key())) throw ConfigError("unknown config key: " + here);
        if (base[it.key()].is_object() && it.value().is_object()) {
            merge_checked(base[it.key()], it.value(), here);
        } else if (base[it.key()].is_object() != it.value().is_object()) {
            throw ConfigError("config key " + here + " has wrong structure");
        } else {
            base[it.key()] = it.value();
        }
    }
}

json load_config(const std::string& path) {
    json cfg = default_config();
    if (!path.empty()) {
        std::ifstream f(path);
        if (!f) throw ConfigError("cannot open config file: " + path);
        json user;
        try {
            user = json::parse(f);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("config parse error: ") + e.what());
        }
        merge_checked(cfg, user, "");
    }
    return cfg;
}

oam::PhysicalGrid grid_from(const json& g) {
    double xh = g.at("x_half_m"), yh = g.at("y_half_m");
    return oam::PhysicalGrid(g.at("nx"), g.at("ny"), -xh, xh, -yh, yh);
}

oam::BeamParams beam_from(const json& cfg) {
    return oam::BeamParams::from_waist(cfg.at("beam").at("w0_m"),
                                       double(cfg.at("beam").at("wavelength_nm")) * 1e-9);
}

oam::HologramSpec spec_from(const json& cfg) {
    const json& h = cfg.at("hologram");
    oam::HologramSpec s;
    s.l = h.at("l");
    s.x0 = h.at("x0_m");
    s.y0 = h.at("y0_m");
    s.z = h.at("z_m");
    s.beam = beam_from(cfg);
    s.lens_focal_mm = h.at("lens_focal_mm");
    s.xl0 = h.at("xl0_m");
    s.yl0 = h.at("yl0_m");
    s.ast = h.at("ast");
    s.kx = h.at("kx_rad_per_m");
    s.ky = h.at("ky_rad_per_m");
    s.lens_sign = h.at("lens_sign");
    s.wavelength = double(cfg.at("beam").at("wavelength_nm")) * 1e-9;
    if (!(s.ast > 0)) throw ConfigError("hologram.ast must be > 0");
    return s;
}

oam::DeviceModel device_from(const json& cfg) {
    const json& d = cfg.at("device");
    oam::DeviceModel dev;
    dev.max_phase = double(d.at("max_phase_pi")) * std::numbers::pi;
    dev.fill_factor = d.at("fill_factor");
    dev.reflectivity = d.at("reflectivity");
    if (!(dev.max_phase > 0) || dev.max_phase > 2 * std::numbers::pi + 1e-12)
        throw ConfigError("device.max_phase_pi must be in (0, 2]");
    if (!(dev.fill_factor > 0) || dev.fill_factor > 1)
        throw ConfigError("device.fill_factor must be in (0, 1]");
    if (!(dev.reflectivity > 0) || dev.reflectivity > 1)
        throw ConfigError("device.reflectivity must be in (0, 1]");
    return dev;
}

struct Manifest {
    json doc;
    explicit Manifest(const json& resolved_cfg, const std::string& command) {
        doc["version"] = kVersion;
        doc["command"] = command;
        doc["config"] = resolved_cfg;
        doc["outputs"] = json::object();
    }
    void record(const std::string& name, const std::vector<std::uint8_t>& bytes) {
        char hex[16];
        std::snprintf(hex, sizeof hex, "%08x", oam::crc32_of(bytes));
        doc["outputs"][name] = {{"bytes", bytes.size()}, {"crc32", hex}};
    }
    void write(const fs::path& dir) const {
        std::string text = doc.dump(2) + "\n";
        oam::write_bytes((dir / "manifest.json").string(),
                         std::vector<std::uint8_t>(text.begin(), text.end()));
    }
};

void emit(const fs::path& dir, const std::string& name, const std::vector<std::uint8_t>& bytes,
          Manifest& man) {
    oam::write_bytes((dir / name).string(), bytes);
    man.record(name, bytes);
}

void emit_text(const fs::path& dir, const std::string& name, const std::string& text,
               Manifest& man) {
    emit(dir, name, std::vector<std::uint8_t>(text.begin(), text.end()), man);
}

int run_hologram(const json& cfg, const fs::path& out) {
    oam::HologramSpec spec = spec_from(cfg);
    oam::PhysicalGrid slm = grid_from(cfg.at("slm"));
    oam::GrayImage img = oam::render(spec, slm);
    Manifest man(cfg, "hologram");
    emit(out, "hologram.pgm", oam::encode_pgm(img), man);
    emit(out, "hologram.png", oam::encode_png(img), man);
    man.write(out);
    return 0;
}

int run_beam(const json& cfg, const fs::path& out) {
    oam::PhysicalGrid grid = grid_from(cfg.at("grid"));
    oam::PhysicalGrid slm = grid_from(cfg.at("slm"));
    oam::BeamParams beam = beam_from(cfg);
    oam::HologramSpec spec = spec_from(cfg);
    oam::DeviceModel dev = device_from(cfg);
    int input_l = cfg.at("beam_run").at("input_l");
    int L = cfg.at("beam_run").at("spectrum_L");

    oam::ComplexField field = oam::lg_field(grid, 0.0, oam::ModeIndex{0, input_l}, beam);
    oam::GrayImage holo = oam::render(spec, slm);
    field = oam::apply_hologram(field, holo, slm, dev);
    field = oam::isolate_order(
        field, oam::OrderFilter{spec.kx, spec.ky, cfg.at("filter").at("radius_rad_per_m")});
    field = oam::normalize(field);

    double dist = cfg.at("propagation").at("distance_m");
    if (dist != 0.0) {
        oam::PropagationPlan plan;
        plan.distance = dist;
        plan.padding_factor = cfg.at("propagation").at("padding_factor");
        std::string method = cfg.at("propagation").at("method");
        if (method == "angular_spectrum")
            plan.method = oam::PropagationMethod::AngularSpectrum;
        else if (method == "fresnel")
            plan.method = oam::PropagationMethod::FresnelTF;
        else
            throw ConfigError("propagation.method must be angular_spectrum or fresnel");
        field = oam::propagate(field, plan);
    }

    oam::OamSpectrum spec_out = oam::oam_spectrum(field, 0.0, 0.0, L);
    Manifest man(cfg, "beam");
    emit(out, "intensity.png", oam::encode_png(oam::intensity_image(field)), man);
    emit_text(out, "spectrum.csv", oam::spectrum_csv(spec_out), man);
    man.doc["results"] = {{"argmax_l", spec_out.argmax_l()},
                          {"argmax_weight", spec_out.weight_at(spec_out.argmax_l())}};
    man.write(out);
    return 0;
}

oam::ExperimentConfig experiment_from(const json& cfg) {
    const json& e = cfg.at("experiment");
    oam::ExperimentConfig ex;
    std::string state = e.at("state");
    if (state == "qutrit")
        ex.state = oam::TwoPhotonState::max_entangled_qutrit();
    else if (state == "gaussian")
        ex.state = oam::TwoPhotonState::gaussian_band(e.at("state_L"), e.at("state_sigma"));
    else
        throw ConfigError("experiment.state must be 'qutrit' or 'gaussian'");
    ex.grid = grid_from(cfg.at("grid"));
    ex.beam = beam_from(cfg);
    for (int q : e.at("signal_charges"))
        ex.signal_analyzers.push_back(oam::AnalyzerSetting{q, 0.0, 0.0, ex.beam});
    for (int q : e.at("idler_charges"))
        ex.idler_analyzers.push_back(oam::AnalyzerSetting{q, 0.0, 0.0, ex.beam});
    oam::HologramSpec t = spec_from(cfg);
    t.kx = 0.0;
    t.ky = 0.0;
    ex.idler_transform.push_back(t);
    return ex;
}

int run_correlate(const json& cfg, const fs::path& out, std::optional<std::uint64_t> seed) {
    oam::ExperimentConfig ex = experiment_from(cfg);
    std::vector<int> charges;
    for (int q : cfg.at("experiment").at("slm_charges")) charges.push_back(q);
    oam::CorrelationTable table = oam::correlation_table_charge_sweep(ex, charges);

    Manifest man(cfg, "correlate");
    emit_text(out, "correlation.csv", oam::correlation_csv(table), man);

    std::string vis = "signal_coupler,idler_coupler,visibility\n";
    for (std::size_t c = 0; c < table.channels.size(); ++c) {
        double v;
        try {
            v = oam::visibility(table, static_cast<int>(c));
        } catch (const std::domain_error&) {
            v = 0.0;
        }
        char buf[96];
        std::snprintf(buf, sizeof buf, "%d,%d,%.12g\n", table.channels[c].first,
                      table.channels[c].second, v);
        vis += buf;
    }
    emit_text(out, "visibility.csv", vis, man);

    if (seed) {
        auto counts =
            oam::sample_counts(table, cfg.at("experiment").at("counts_scale"), *seed);
        emit_text(out, "counts.csv", oam::correlation_counts_csv(table, counts), man);
        man.doc["seed"] = *seed;
    }
    man.write(out);
    return 0;
}

int run_efficiency(const json& cfg, const fs::path& out) {
    oam::DeviceModel dev = device_from(cfg);
    oam::DeviceModel ideal = oam::DeviceModel::ideal();
    std::string csv = "order,configured,ideal\n";
    std::printf("order   configured      ideal\n");
    for (int m = -2; m <= 2; ++m) {
        double pc = dev.reflectivity * dev.fill_factor * dev.fill_factor *
                    oam::blaze_order_power(dev, 256, m);
        double pi_ = oam::blaze_order_power(ideal, 256, m);
        std::printf("%+d      %10.6f  %10.6f\n", m, pc, pi_);
        char buf[80];
        std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g\n", m, pc, pi_);
        csv += buf;
    }
    double f1 = oam::first_order_efficiency(dev, 256);
    std::printf("first-order total (configured device): %.4f\n", f1);
    if (!out.empty()) {
        Manifest man(cfg, "efficiency");
        emit_text(out, "efficiency.csv", csv, man);
        man.write(out);
    }
    return 0;
}

// --sweep KEY=V1,V2,...  applies a dotted numeric key, one output subdir per value.
struct Sweep {
    std::string key;
    std::vector<double> values;
};

Sweep parse_sweep(const std::string& arg) {
    auto eq = arg.find('=');
    if (eq == std::string::npos) throw ConfigError("--sweep expects KEY=V1,V2,...");
    Sweep s;
    s.key = arg.substr(0, eq);
    std::string rest = arg.substr(eq + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
        auto comma = rest.find(',', pos);
        std::string tok = rest.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            s.values.push_back(std::stod(tok));
        } catch (...) {
            throw ConfigError("--sweep: cannot parse value '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (s.values.empty()) throw ConfigError("--sweep: no values given");
    return s;
}

void set_dotted(json& cfg, const std::string& key, double value) {
    json* node = &cfg;
    std::size_t pos = 0;
    while (true) {
        auto dot = key.find('.', pos);
        std::string part = key.substr(pos, dot == std::string::npos ? dot : dot - pos);
        if (!node->contains(part)) throw ConfigError("--sweep: unknown key " + key);
        if (dot == std::string::npos) {
            if ((*node)[part].is_number_integer())
                (*node)[part] = static_cast<long long>(value);
            else
                (*node)[part] = value;
            return;
        }
        node = &(*node)[part];
        pos = dot + 1;
    }
}

std::string value_tag(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    std::string s = buf;
    for (char& c : s)
        if (c == '.' || c == '-') c = '_';
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SLM hologram and OAM entanglement simulator"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand name

    std::string config_path, out_dir = ".", sweep_arg;
    std::optional<std::uint64_t> seed;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "RNG seed for count sampling");
    app.add_option("--sweep", sweep_arg, "KEY=V1,V2,... parameter sweep");

    auto* cmd_holo = app.add_subcommand("hologram", "render an 8-bit hologram frame");
    auto* cmd_beam = app.add_subcommand("beam", "source -> SLM -> first order -> analysis");
    auto* cmd_corr = app.add_subcommand("correlate", "two-photon coincidence table");
    auto* cmd_eff = app.add_subcommand("efficiency", "diffraction-order power budget");

    CLI11_PARSE(app, argc, argv);

    try {
        json cfg = load_config(config_path);

        auto dispatch = [&](const json& c, const fs::path& dir) -> int {
            fs::create_directories(dir);
            if (cmd_holo->parsed()) return run_hologram(c, dir);
            if (cmd_beam->parsed()) return run_beam(c, dir);
            if (cmd_corr->parsed()) return run_correlate(c, dir, seed);
            return run_efficiency(c, dir);
        };

        if (sweep_arg.empty()) return dispatch(cfg, out_dir);

        Sweep sweep = parse_sweep(sweep_arg);
        for (double v : sweep.values) {
            json c = cfg;
            set_dotted(c, sweep.key, v);
            fs::path dir = fs::path(out_dir) / ("sweep_" + value_tag(v));
            int rc = dispatch(c, dir);
            if (rc != 0) return rc;
        }
        return 0;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const oam::AliasingError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
