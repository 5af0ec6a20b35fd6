#include "colldec/runner.hpp"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "colldec/kinematics.hpp"
#include "colldec/support.hpp"
#include "colldec/wigner.hpp"

namespace colldec {

namespace {

namespace fs = std::filesystem;

constexpr std::uint64_t kPanelSeedOffset = 1000000;

std::string fmt(double v) { return format_double(v, 17); }

class OutputSet {
public:
    OutputSet(fs::path dir, RunManifest& manifest) : dir_(std::move(dir)), manifest_(manifest) {}

    template <typename Writer>
    void write(const std::string& name, Writer&& writer) {
        const fs::path path = dir_ / name;
        {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
            writer(out);
            out.flush();
            if (!out) throw std::runtime_error("write failed for " + path.string());
        }
        manifest_.outputs.push_back({name, sha256_file(path), fs::file_size(path)});
    }

    void grid(const std::string& name, const WignerGrid& g) {
        write(name, [&](std::ostream& out) { write_grid_csv(out, g); });
    }

private:
    fs::path dir_;
    RunManifest& manifest_;
};

void warn(RunManifest& manifest, std::ostream* diagnostics, const std::string& label,
          const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) {
        std::string line = label.empty() ? w : label + ": " + w;
        if (diagnostics) *diagnostics << "warning: " << line << '\n';
        manifest.warnings.push_back(std::move(line));
    }
}

std::string abscissa_label(const ExperimentConfig& cfg, double v) {
    return std::string(cfg.sweep_axis == SweepAxis::temperature ? "T" : "t") + format_double(v, 0);
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, McEstimate McDecoherence::*which) {
    out << "abscissa,analytic,mc_mean,mc_se,n\n";
    for (const auto& row : rows) {
        const McEstimate& e = row.mc.*which;
        out << fmt(row.abscissa) << ',' << fmt(row.analytic) << ',' << fmt(e.mean) << ',' << fmt(e.std_error)
            << ',' << e.n_samples << '\n';
    }
}

void run_single_collision(const ExperimentConfig& cfg, OutputSet& files, RunManifest& manifest,
                          std::ostream* diagnostics) {
    const CatState cat = config_cat(cfg);
    const Tracer tracer = config_tracer(cfg);
    const Constants consts = config_constants(cfg);
    const MassRatio ratio{cfg.alpha};
    const CollisionSample sample{cfg.x_g, cfg.p_g};
    const CatState after = collide_cat(cat, sample, ratio, consts);
    const CatDescriptors desc = cat_descriptors(cat);

    const WignerGrid before_grid = wigner_grid(cat, cfg.grid, consts, cfg.workers);
    const WignerGrid after_grid = wigner_grid(after, cfg.grid, consts, cfg.workers);
    files.grid("wigner_before.csv", before_grid);
    files.grid("wigner_after.csv", after_grid);
    files.grid("wigner_difference.csv", grid_difference(after_grid, before_grid));

    const GasEnvironment env = config_gas(cfg, cfg.temperature);
    const McDecoherence mc =
        mc_decoherence(cat, env, tracer, cfg.horizon, McOptions{cfg.samples, cfg.seed, cfg.workers});
    manifest.regimes.emplace_back("T" + format_double(cfg.temperature, 0), mc.regime);
    warn(manifest, diagnostics, "", mc.regime.warnings);

    const ClassicalOutcome a = collide_classical(cfg.x_g, cfg.p_g, cat.a.x, cat.a.p, ratio);
    const double metric =
        interference_metric(wigner_evaluator(cat, consts), wigner_evaluator(after, consts), cat, consts);

    files.write("collision.csv", [&](std::ostream& out) {
        auto row = [&](std::string_view name, double v) { out << name << ',' << fmt(v) << '\n'; };
        out << "quantity,value\n";
        row("c_bar", coherence_damping(desc, cat.a.sigma, ratio, consts));
        row("phi_bar", collision_phase(desc, sample, ratio, consts));
        row("x_a_after", after.a.x);
        row("p_a_after", after.a.p);
        row("x_b_after", after.b.x);
        row("p_b_after", after.b.p);
        row("x_g_after_a", a.x_g);
        row("p_g_after_a", a.p_g);
        row("phase_invariant_before", phase_invariant(cat, consts));
        row("phase_invariant_after", phase_invariant(after, consts));
        row("measurement_decoherence", measurement_decoherence(desc, cat.a.sigma, ratio, consts).exact);
        row("interference_metric", metric);
        row("wigner_integral_before", grid_integral(before_grid));
        row("wigner_integral_after", grid_integral(after_grid));
        row("mc_antinode_mean", mc.antinode.mean);
        row("mc_antinode_se", mc.antinode.std_error);
        row("mc_damped_phase_mean", mc.damped_phase.mean);
        row("mc_damped_phase_se", mc.damped_phase.std_error);
        row("mc_phase_averaging_mean", mc.phase_averaging.mean);
        row("mc_phase_averaging_se", mc.phase_averaging.std_error);
        row("mc_samples", static_cast<double>(cfg.samples));
    });
}

void run_panels(const ExperimentConfig& cfg, OutputSet& files, RunManifest& manifest, std::ostream* diagnostics) {
    const CatState cat = config_cat(cfg);
    const Tracer tracer = config_tracer(cfg);
    const Constants consts = config_constants(cfg);
    const WignerFn w0 = wigner_evaluator(cat, consts);
    const WignerGrid before_grid = sample_grid(w0, cfg.grid, cfg.workers);
    files.grid("wigner_before.csv", before_grid);

    for (std::size_t k = 0; k < cfg.panel_values.size(); ++k) {
        const double v = cfg.panel_values[k];
        const bool by_temperature = cfg.sweep_axis == SweepAxis::temperature;
        const double T = by_temperature ? v : cfg.temperature;
        const double t = by_temperature ? cfg.horizon : v;
        const GasEnvironment env = config_gas(cfg, T);
        const std::string tag = abscissa_label(cfg, v);

        const auto samples = draw_collisions(env, t, cfg.panel_samples, cfg.seed + kPanelSeedOffset + k);
        const WignerFn w1 = ensemble_wigner(cat, samples, mass_ratio(env, tracer), consts);
        const WignerGrid after_grid = sample_grid(w1, cfg.grid, cfg.workers);
        files.grid("wigner_after_" + tag + ".csv", after_grid);
        files.grid("wigner_difference_" + tag + ".csv", grid_difference(after_grid, before_grid));

        const double rate = collision_rate(env);
        if (rate * t <= 1.0) {
            files.grid("wigner_mixture_" + tag + ".csv",
                       sample_grid(mixture_wigner(w0, w1, rate, t), cfg.grid, cfg.workers));
        } else {
            warn(manifest, diagnostics, tag,
                 {"Rt = " + format_double(rate * t, 6) + " > 1, mixture grid skipped"});
        }
    }
}

std::string hex(const unsigned char* data, unsigned len) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned k = 0; k < len; ++k) {
        out += digits[data[k] >> 4];
        out += digits[data[k] & 0xf];
    }
    return out;
}

}  // namespace

std::string_view tool_version() { return COLLDEC_VERSION; }

CatState config_cat(const ExperimentConfig& cfg) {
    CatState cat{GaussianPacket{cfg.x_a, cfg.p_a, cfg.sigma}, GaussianPacket{cfg.x_b, cfg.p_b, cfg.sigma}, cfg.c,
                 cfg.phi};
    validate(cat);
    return cat;
}

Tracer config_tracer(const ExperimentConfig& cfg) { return Tracer{cfg.mass}; }

Constants config_constants(const ExperimentConfig& cfg) { return Constants{cfg.hbar, cfg.k_B}; }

GasEnvironment config_gas(const ExperimentConfig& cfg, double temperature) {
    GasEnvironment env = matched_gas(MassRatio{cfg.alpha}, config_tracer(cfg), cfg.sigma, temperature, cfg.n_g,
                                     config_constants(cfg));
    env.use_effective_temperature = cfg.effective_temperature;
    validate(env);
    return env;
}

double analytic_decoherence(const CatState& cat, const GasEnvironment& env, const Tracer& tracer, double t) {
    const CatDescriptors d = cat_descriptors(cat);
    if (d.p_D == 0.0) return position_decoherence_per_collision(d.x_D, env);
    if (d.x_D == 0.0) return momentum_decoherence_per_collision(d.p_D, tracer, t, env);
    return std::numeric_limits<double>::quiet_NaN();
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg) {
    const CatState cat = config_cat(cfg);
    const Tracer tracer = config_tracer(cfg);
    std::vector<SweepRow> rows;
    for (std::size_t k = 0; k < cfg.sweep_values.size(); ++k) {
        const double v = cfg.sweep_values[k];
        const bool by_temperature = cfg.sweep_axis == SweepAxis::temperature;
        const double T = by_temperature ? v : cfg.temperature;
        const double t = by_temperature ? cfg.horizon : v;
        const GasEnvironment env = config_gas(cfg, T);
        SweepRow row;
        row.abscissa = v;
        row.analytic = analytic_decoherence(cat, env, tracer, t);
        row.mc = mc_decoherence(cat, env, tracer, t, McOptions{cfg.samples, cfg.seed + k, cfg.workers});
        rows.push_back(std::move(row));
    }
    return rows;
}

RunManifest run_experiment(const ExperimentConfig& cfg, std::ostream* diagnostics) {
    validate(cfg);
    RunManifest manifest;
    manifest.config = cfg;
    manifest.tool_version = std::string(tool_version());
    manifest.seed = cfg.seed;

    const fs::path dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
    OutputSet files(dir, manifest);

    if (!is_sweep(cfg.experiment)) {
        run_single_collision(cfg, files, manifest, diagnostics);
    } else {
        const auto rows = run_sweep(cfg);
        for (const auto& row : rows) {
            const std::string label = abscissa_label(cfg, row.abscissa);
            manifest.regimes.emplace_back(label, row.mc.regime);
            warn(manifest, diagnostics, label, row.mc.regime.warnings);
        }
        files.write("sweep.csv", [&](std::ostream& out) { write_sweep_csv(out, rows, &McDecoherence::phase_averaging); });
        files.write("sweep_antinode.csv",
                    [&](std::ostream& out) { write_sweep_csv(out, rows, &McDecoherence::antinode); });
        run_panels(cfg, files, manifest, diagnostics);
    }

    files.write("regime.txt", [&](std::ostream& out) {
        for (const auto& [label, report] : manifest.regimes) {
            out << '[' << label << "]\n";
            write_regime_report(out, report);
        }
    });

    const fs::path manifest_path = dir / "manifest.txt";
    std::ofstream out(manifest_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + manifest_path.string() + " for writing");
    write_manifest(out, manifest);
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + manifest_path.string());
    return manifest;
}

void write_manifest(std::ostream& out, const RunManifest& manifest) {
    out << "tool = colldec\n";
    out << "version = " << manifest.tool_version << '\n';
    out << "seed = " << manifest.seed << '\n';
    out << "\n[config]\n" << render_config(manifest.config);
    for (const auto& [label, report] : manifest.regimes) {
        out << "\n[regime " << label << "]\n";
        write_regime_report(out, report);
    }
    out << "\n[outputs]\n";
    for (const auto& o : manifest.outputs) out << o.name << " = " << o.sha256 << ' ' << o.bytes << '\n';
}

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 initialisation failed");
    }
    std::array<char, 1 << 16> buf;
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    EVP_DigestFinal_ex(ctx.get(), md, &len);
    return hex(md, len);
}

std::vector<std::string> verify_manifest(const fs::path& dir) {
    std::vector<std::string> problems;
    std::ifstream in(dir / "manifest.txt", std::ios::binary);
    if (!in) return {"manifest.txt missing in " + dir.string()};
    std::string line;
    bool in_outputs = false;
    std::size_t listed = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.front() == '[') {
            in_outputs = line == "[outputs]";
            continue;
        }
        if (!in_outputs || line.empty()) continue;
        const auto eq = line.find(" = ");
        const auto space = line.rfind(' ');
        if (eq == std::string::npos || space <= eq + 2) {
            problems.push_back("malformed output line: " + line);
            continue;
        }
        ++listed;
        const std::string name = line.substr(0, eq);
        const std::string expected = line.substr(eq + 3, space - eq - 3);
        const fs::path path = dir / name;
        if (!fs::exists(path)) {
            problems.push_back(name + ": missing");
        } else if (sha256_file(path) != expected) {
            problems.push_back(name + ": checksum mismatch");
        }
    }
    if (listed == 0) problems.push_back("manifest lists no outputs");
    return problems;
}

}  // namespace colldec
