#pragma once

// Experiment configuration: presets for the figure data sets, a flat
// `key = value` file format and command-line overrides.
//
// Resolution order (later wins): preset of the selected experiment, config
// file, command-line overrides. The experiment itself is taken from the
// overrides if given there, else from the file, else `custom`.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "colldec/wigner.hpp"

namespace colldec {

enum class Experiment {
    wigner_single_collision,
    wigner_light_gas,
    position_sweep,
    high_temperature_sweep,
    momentum_sweep,
    custom,
};

enum class SweepAxis { temperature, horizon };

std::string_view to_string(Experiment e);
std::string_view to_string(SweepAxis a);
std::optional<Experiment> parse_experiment(std::string_view name);

bool is_sweep(Experiment e);

struct ExperimentConfig {
    Experiment experiment = Experiment::custom;

    // tracer cat state
    double x_a = 20.0;
    double x_b = -20.0;
    double p_a = 0.0;
    double p_b = 0.0;
    double sigma = 4.0;
    double c = 1.0;
    double phi = 0.0;
    double mass = 1.0;

    // gas; m_g = alpha * mass and sigma_g follows from width matching
    double alpha = 1e-4;
    double temperature = 0.5;
    double n_g = 1e-4;
    bool effective_temperature = false;

    double hbar = 1.0;
    double k_B = 1.0;
    double horizon = 20.0;

    // gas packet for the single-collision experiments
    double x_g = 100.0;
    double p_g = -1.0;

    SweepAxis sweep_axis = SweepAxis::temperature;
    std::vector<double> sweep_values;
    std::vector<double> panel_values;  // sweep abscissae that also get Wigner grids

    std::size_t samples = 10000;
    std::size_t panel_samples = 200;
    std::uint64_t seed = 1;
    unsigned workers = 0;

    GridSpec grid{-32.0, 32.0, -1.0, 1.0, 128, 128};
    std::string out_dir = "out";
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// One `key = value` assignment and where it came from ("file.cfg:12",
/// "--seed", ...), used in diagnostics.
struct Setting {
    std::string key;
    std::string value;
    std::string origin;
};

ExperimentConfig preset(Experiment e);

/// Parses the flat format: one `key = value` per line, `#` starts a comment,
/// blank lines ignored. Throws ConfigError naming the offending line.
std::vector<Setting> parse_config_text(std::string_view text, std::string_view source);
std::vector<Setting> read_config_file(const std::filesystem::path& path);

/// Applies settings onto `cfg`. Unknown keys and malformed values throw
/// ConfigError naming the key and origin.
void apply_settings(ExperimentConfig& cfg, const std::vector<Setting>& settings);

/// Throws ConfigError listing every violated invariant.
void validate(const ExperimentConfig& cfg);

/// Full resolution: preset, then file (if any), then overrides, then
/// validation.
ExperimentConfig load_config(const std::optional<std::filesystem::path>& file,
                             const std::vector<Setting>& overrides = {});

/// Canonical `key = value` rendering; parse_config_text of the result
/// reproduces the config.
std::string render_config(const ExperimentConfig& cfg);

/// `NX,NP,XMIN,XMAX,PMIN,PMAX`.
GridSpec parse_grid(std::string_view text);

}  // namespace colldec
