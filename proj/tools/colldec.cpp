// colldec: run a collisional-decoherence experiment and write its data files.
//
// Precedence: preset of the chosen experiment < --config file < flags
// (--set and the named flags, named flags last).

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "colldec/config.hpp"
#include "colldec/quadrature.hpp"
#include "colldec/runner.hpp"
#include "colldec/support.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Collisional decoherence of a tracer cat state in a 1D thermal gas"};
    app.set_version_flag("--version", std::string(colldec::tool_version()));

    std::string experiment;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::optional<double> horizon;
    std::string grid;
    std::string out_dir;
    std::optional<unsigned> workers;
    std::vector<std::string> sets;
    std::string verify_dir;
    bool print_config = false;

    app.add_option("--experiment", experiment,
                   "wigner_single_collision, wigner_light_gas, position_sweep, high_temperature_sweep, "
                   "momentum_sweep or custom");
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--seed", seed, "root random seed");
    app.add_option("--samples", samples, "Monte-Carlo samples per sweep point");
    app.add_option("--horizon", horizon, "collision horizon t");
    app.add_option("--grid", grid, "Wigner grid NX,NP,XMIN,XMAX,PMIN,PMAX");
    app.add_option("--out-dir", out_dir, "output directory");
    app.add_option("--workers", workers, "worker threads (0: all cores)");
    app.add_option("--set", sets, "extra key=value override, repeatable");
    app.add_option("--verify", verify_dir, "check the manifest checksums in a finished output directory");
    app.add_flag("--print-config", print_config, "print the resolved configuration and exit");

    CLI11_PARSE(app, argc, argv);

    if (!verify_dir.empty()) {
        try {
            const auto problems = colldec::verify_manifest(verify_dir);
            for (const auto& p : problems) std::cerr << "error: " << p << '\n';
            if (problems.empty()) std::cout << "manifest verified: " << verify_dir << '\n';
            return problems.empty() ? 0 : kExitRuntime;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitRuntime;
        }
    }

    colldec::ExperimentConfig cfg;
    try {
        std::vector<colldec::Setting> overrides;
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw colldec::ConfigError("--set expects key=value, got '" + s + "'");
            auto parsed = colldec::parse_config_text(s, "--set");
            for (auto& p : parsed) p.origin = "--set " + p.key;
            overrides.insert(overrides.end(), parsed.begin(), parsed.end());
        }
        auto flag = [&](const std::string& key, const std::string& value) {
            overrides.push_back({key, value, "--" + key});
        };
        if (!experiment.empty()) flag("experiment", experiment);
        if (seed) flag("seed", std::to_string(*seed));
        if (samples) flag("samples", std::to_string(*samples));
        if (horizon) flag("horizon", colldec::format_double(*horizon, 0));
        if (!grid.empty()) flag("grid", grid);
        if (!out_dir.empty()) flag("out_dir", out_dir);
        if (workers) flag("workers", std::to_string(*workers));

        std::optional<std::filesystem::path> file;
        if (!config_path.empty()) file = config_path;
        cfg = colldec::load_config(file, overrides);
    } catch (const colldec::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    if (print_config) {
        std::cout << colldec::render_config(cfg);
        return 0;
    }

    try {
        const auto manifest = colldec::run_experiment(cfg, &std::cerr);
        std::cout << "wrote " << manifest.outputs.size() << " files to " << cfg.out_dir << '\n';
    } catch (const colldec::QuadratureError& e) {
        std::cerr << "quadrature error: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
