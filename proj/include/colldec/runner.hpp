#pragma once

// Runs one configured experiment and writes its data files plus a manifest
// with SHA-256 checksums.
//
// Files per experiment:
//   wigner_before.csv, wigner_after.csv, wigner_difference.csv, collision.csv
//     (single-collision experiments)
//   sweep.csv, sweep_antinode.csv, wigner_before.csv and per panel value V
//     (tagged T<V> or t<V>): wigner_after_<tag>.csv, wigner_difference_<tag>.csv,
//     wigner_mixture_<tag>.csv (sweeps)
//   regime.txt, manifest.txt (all)

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "colldec/config.hpp"
#include "colldec/decoherence.hpp"
#include "colldec/thermal_gas.hpp"

namespace colldec {

std::string_view tool_version();

struct OutputRecord {
    std::string name;  // relative to the output directory
    std::string sha256;
    std::uintmax_t bytes = 0;
};

struct RunManifest {
    ExperimentConfig config;
    std::string tool_version;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, RegimeReport>> regimes;  // label, report
    std::vector<OutputRecord> outputs;
    std::vector<std::string> warnings;
};

/// Runs the experiment and writes every output under cfg.out_dir (created if
/// missing). Regime warnings are written to `diagnostics` when given and
/// collected in the manifest; they never abort the run. I/O failures throw
/// std::runtime_error, quadrature failures QuadratureError.
RunManifest run_experiment(const ExperimentConfig& cfg, std::ostream* diagnostics = nullptr);

/// Rows of a sweep: the analytic value (NaN when the cat mixes position and
/// momentum separation) and the three Monte-Carlo estimators.
struct SweepRow {
    double abscissa = 0.0;
    double analytic = 0.0;
    McDecoherence mc;
};

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg);

/// The cat, tracer and gas a config describes at a given temperature.
CatState config_cat(const ExperimentConfig& cfg);
Tracer config_tracer(const ExperimentConfig& cfg);
Constants config_constants(const ExperimentConfig& cfg);
GasEnvironment config_gas(const ExperimentConfig& cfg, double temperature);

/// Closed-form decoherence per collision for `cat`: position formula for
/// p_D = 0, momentum formula for x_D = 0, NaN otherwise.
double analytic_decoherence(const CatState& cat, const GasEnvironment& env, const Tracer& tracer,
                            double t);

void write_manifest(std::ostream& out, const RunManifest& manifest);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Re-reads `dir`/manifest.txt and recomputes every listed checksum. Returns
/// one message per missing or mismatching file; empty means verified.
std::vector<std::string> verify_manifest(const std::filesystem::path& dir);

}  // namespace colldec
