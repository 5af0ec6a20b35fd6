#include "colldec/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "colldec/support.hpp"

namespace colldec {

namespace {

constexpr std::array<std::pair<Experiment, std::string_view>, 6> kExperimentNames{{
    {Experiment::wigner_single_collision, "wigner_single_collision"},
    {Experiment::wigner_light_gas, "wigner_light_gas"},
    {Experiment::position_sweep, "position_sweep"},
    {Experiment::high_temperature_sweep, "high_temperature_sweep"},
    {Experiment::momentum_sweep, "momentum_sweep"},
    {Experiment::custom, "custom"},
}};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const Setting& s, std::string_view expected) {
    throw ConfigError(s.origin + ": key '" + s.key + "': expected " + std::string(expected) + ", got '" +
                      s.value + "'");
}

double to_double(std::string_view text, const Setting& s) {
    text = trim(text);
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
        bad_value(s, "a finite number");
    }
    return v;
}

template <typename Int>
Int to_integer(std::string_view text, const Setting& s) {
    text = trim(text);
    Int v{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) bad_value(s, "a non-negative integer");
    return v;
}

bool to_bool(std::string_view text, const Setting& s) {
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    bad_value(s, "true or false");
}

std::vector<std::string_view> split_commas(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.push_back(trim(text.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::vector<double> to_list(std::string_view text, const Setting& s) {
    std::vector<double> out;
    if (trim(text).empty()) return out;
    for (auto item : split_commas(text)) out.push_back(to_double(item, s));
    return out;
}

std::string render_list(const std::vector<double>& values) {
    std::string out;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k) out += ',';
        out += format_double(values[k], 0);
    }
    return out;
}

std::string render_grid(const GridSpec& g) {
    return std::to_string(g.nx) + ',' + std::to_string(g.np) + ',' + format_double(g.x_min, 0) + ',' +
           format_double(g.x_max, 0) + ',' + format_double(g.p_min, 0) + ',' + format_double(g.p_max, 0);
}

struct Field {
    std::string_view key;
    std::function<void(ExperimentConfig&, const Setting&)> set;
    std::function<std::string(const ExperimentConfig&)> get;
};

Field number(std::string_view key, double ExperimentConfig::*member) {
    return {key, [member](ExperimentConfig& c, const Setting& s) { c.*member = to_double(s.value, s); },
            [member](const ExperimentConfig& c) { return format_double(c.*member, 0); }};
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = [] {
        std::vector<Field> f;
        f.push_back({"experiment",
                     [](ExperimentConfig& c, const Setting& s) {
                         const auto e = parse_experiment(trim(s.value));
                         if (!e) bad_value(s, "an experiment name");
                         c.experiment = *e;
                     },
                     [](const ExperimentConfig& c) { return std::string(to_string(c.experiment)); }});
        f.push_back(number("x_a", &ExperimentConfig::x_a));
        f.push_back(number("x_b", &ExperimentConfig::x_b));
        f.push_back(number("p_a", &ExperimentConfig::p_a));
        f.push_back(number("p_b", &ExperimentConfig::p_b));
        f.push_back(number("sigma", &ExperimentConfig::sigma));
        f.push_back(number("c", &ExperimentConfig::c));
        f.push_back(number("phi", &ExperimentConfig::phi));
        f.push_back(number("mass", &ExperimentConfig::mass));
        f.push_back(number("alpha", &ExperimentConfig::alpha));
        f.push_back(number("temperature", &ExperimentConfig::temperature));
        f.push_back(number("n_g", &ExperimentConfig::n_g));
        f.push_back({"effective_temperature",
                     [](ExperimentConfig& c, const Setting& s) { c.effective_temperature = to_bool(s.value, s); },
                     [](const ExperimentConfig& c) { return std::string(c.effective_temperature ? "true" : "false"); }});
        f.push_back(number("hbar", &ExperimentConfig::hbar));
        f.push_back(number("k_B", &ExperimentConfig::k_B));
        f.push_back(number("horizon", &ExperimentConfig::horizon));
        f.push_back(number("x_g", &ExperimentConfig::x_g));
        f.push_back(number("p_g", &ExperimentConfig::p_g));
        f.push_back({"sweep_axis",
                     [](ExperimentConfig& c, const Setting& s) {
                         const auto v = trim(s.value);
                         if (v == "temperature") {
                             c.sweep_axis = SweepAxis::temperature;
                         } else if (v == "horizon") {
                             c.sweep_axis = SweepAxis::horizon;
                         } else {
                             bad_value(s, "temperature or horizon");
                         }
                     },
                     [](const ExperimentConfig& c) { return std::string(to_string(c.sweep_axis)); }});
        f.push_back({"sweep_values",
                     [](ExperimentConfig& c, const Setting& s) { c.sweep_values = to_list(s.value, s); },
                     [](const ExperimentConfig& c) { return render_list(c.sweep_values); }});
        f.push_back({"panel_values",
                     [](ExperimentConfig& c, const Setting& s) { c.panel_values = to_list(s.value, s); },
                     [](const ExperimentConfig& c) { return render_list(c.panel_values); }});
        f.push_back({"samples",
                     [](ExperimentConfig& c, const Setting& s) { c.samples = to_integer<std::size_t>(s.value, s); },
                     [](const ExperimentConfig& c) { return std::to_string(c.samples); }});
        f.push_back({"panel_samples",
                     [](ExperimentConfig& c, const Setting& s) {
                         c.panel_samples = to_integer<std::size_t>(s.value, s);
                     },
                     [](const ExperimentConfig& c) { return std::to_string(c.panel_samples); }});
        f.push_back({"seed",
                     [](ExperimentConfig& c, const Setting& s) { c.seed = to_integer<std::uint64_t>(s.value, s); },
                     [](const ExperimentConfig& c) { return std::to_string(c.seed); }});
        f.push_back({"workers",
                     [](ExperimentConfig& c, const Setting& s) { c.workers = to_integer<unsigned>(s.value, s); },
                     [](const ExperimentConfig& c) { return std::to_string(c.workers); }});
        f.push_back({"grid",
                     [](ExperimentConfig& c, const Setting& s) {
                         try {
                             c.grid = parse_grid(s.value);
                         } catch (const ConfigError&) {
                             bad_value(s, "NX,NP,XMIN,XMAX,PMIN,PMAX");
                         }
                     },
                     [](const ExperimentConfig& c) { return render_grid(c.grid); }});
        f.push_back({"out_dir", [](ExperimentConfig& c, const Setting& s) { c.out_dir = std::string(trim(s.value)); },
                     [](const ExperimentConfig& c) { return c.out_dir; }});
        return f;
    }();
    return table;
}

const Field* find_field(std::string_view key) {
    for (const auto& f : fields()) {
        if (f.key == key) return &f;
    }
    return nullptr;
}

std::vector<double> arithmetic(double first, double step, int count) {
    std::vector<double> out;
    for (int k = 0; k < count; ++k) out.push_back(first + step * k);
    return out;
}

}  // namespace

std::string_view to_string(Experiment e) {
    for (const auto& [value, name] : kExperimentNames) {
        if (value == e) return name;
    }
    return "custom";
}

std::string_view to_string(SweepAxis a) {
    return a == SweepAxis::temperature ? "temperature" : "horizon";
}

std::optional<Experiment> parse_experiment(std::string_view name) {
    for (const auto& [value, n] : kExperimentNames) {
        if (n == name) return value;
    }
    return std::nullopt;
}

bool is_sweep(Experiment e) {
    return e != Experiment::wigner_single_collision && e != Experiment::wigner_light_gas;
}

ExperimentConfig preset(Experiment e) {
    ExperimentConfig c;
    c.experiment = e;
    switch (e) {
        case Experiment::wigner_single_collision:
        case Experiment::wigner_light_gas:
            c.x_a = 15.0;
            c.x_b = 0.0;
            c.p_a = 0.0;
            c.p_b = 1.5;
            c.sigma = 4.0;
            c.mass = 1.0;
            c.x_g = 100.0;
            c.p_g = -1.0;
            c.alpha = 0.04;
            c.temperature = 1.0;
            c.grid = GridSpec{-20.0, 40.0, -3.0, 3.0, 128, 128};
            if (e == Experiment::wigner_light_gas) {
                c.p_g = -0.2;
                c.x_g = 500.0;
                c.alpha = 0.002;
            }
            break;
        case Experiment::position_sweep:
        case Experiment::custom:
            c.sweep_axis = SweepAxis::temperature;
            c.sweep_values = {0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.75, 1.0, 1.25, 1.5};
            c.panel_values = {0.2, 0.5, 1.5};
            if (e == Experiment::custom) c.panel_values.clear();
            break;
        case Experiment::high_temperature_sweep:
            c.sweep_axis = SweepAxis::temperature;
            c.sweep_values = arithmetic(1.0, 1.0, 10);
            c.panel_values = {7.0};
            break;
        case Experiment::momentum_sweep:
            c.x_a = 0.0;
            c.x_b = 0.0;
            c.p_a = 1.2;
            c.p_b = -1.2;
            c.temperature = 0.5;
            c.sweep_axis = SweepAxis::horizon;
            c.sweep_values = arithmetic(2.5, 2.5, 20);
            c.panel_values = {20.0, 50.0};
            c.grid = GridSpec{-16.0, 16.0, -2.4, 2.4, 128, 128};
            break;
    }
    return c;
}

std::vector<Setting> parse_config_text(std::string_view text, std::string_view source) {
    std::vector<Setting> out;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        std::string_view line = text.substr(start, end == std::string_view::npos ? end : end - start);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (!line.empty()) {
            const std::string origin = std::string(source) + ':' + std::to_string(line_no);
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) {
                throw ConfigError(origin + ": expected 'key = value', got '" + std::string(line) + "'");
            }
            const auto key = trim(line.substr(0, eq));
            if (key.empty()) throw ConfigError(origin + ": missing key before '='");
            out.push_back({std::string(key), std::string(trim(line.substr(eq + 1))), origin});
        }
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return out;
}

std::vector<Setting> read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path.string());
}

void apply_settings(ExperimentConfig& cfg, const std::vector<Setting>& settings) {
    for (const auto& s : settings) {
        const Field* f = find_field(s.key);
        if (!f) throw ConfigError(s.origin + ": unknown key '" + s.key + "'");
        f->set(cfg, s);
    }
}

void validate(const ExperimentConfig& cfg) {
    std::vector<std::string> errors;
    auto need = [&](bool ok, std::string_view msg) {
        if (!ok) errors.emplace_back(msg);
    };
    need(cfg.sigma > 0.0, "sigma must be positive");
    need(cfg.mass > 0.0, "mass must be positive");
    need(cfg.alpha > 0.0, "alpha must be positive");
    need(cfg.temperature > 0.0, "temperature must be positive");
    need(cfg.n_g > 0.0, "n_g must be positive");
    need(cfg.hbar > 0.0, "hbar must be positive");
    need(cfg.k_B > 0.0, "k_B must be positive");
    need(cfg.horizon > 0.0, "horizon must be positive");
    need(cfg.c >= 0.0 && cfg.c <= 1.0, "c must lie in [0, 1]");
    need(cfg.samples >= 2, "samples must be at least 2");
    need(cfg.out_dir.size() > 0, "out_dir must not be empty");
    try {
        validate(cfg.grid);
    } catch (const std::invalid_argument& e) {
        errors.emplace_back(std::string("grid: ") + e.what());
    }
    if (is_sweep(cfg.experiment)) {
        need(!cfg.sweep_values.empty(), "sweep_values must not be empty");
        need(cfg.c > 0.0, "sweeps measure interference and need c > 0");
        need(cfg.panel_samples >= 1 || cfg.panel_values.empty(), "panel_samples must be at least 1");
        for (double v : cfg.sweep_values) {
            if (!(v > 0.0)) {
                errors.emplace_back("sweep value " + format_double(v, 0) + " must be positive");
            }
        }
        for (double v : cfg.panel_values) {
            if (!(v > 0.0)) {
                errors.emplace_back("panel value " + format_double(v, 0) + " must be positive");
            }
        }
    }
    if (!errors.empty()) {
        std::string msg = "invalid configuration:";
        for (const auto& e : errors) msg += "\n  - " + e;
        throw ConfigError(msg);
    }
}

ExperimentConfig load_config(const std::optional<std::filesystem::path>& file,
                             const std::vector<Setting>& overrides) {
    std::vector<Setting> from_file;
    if (file) from_file = read_config_file(*file);

    Experiment experiment = Experiment::custom;
    for (const auto* layer : std::array<const std::vector<Setting>*, 2>{&from_file, &overrides}) {
        for (const auto& s : *layer) {
            if (s.key != "experiment") continue;
            const auto e = parse_experiment(trim(s.value));
            if (!e) bad_value(s, "an experiment name");
            experiment = *e;
        }
    }

    ExperimentConfig cfg = preset(experiment);
    apply_settings(cfg, from_file);
    apply_settings(cfg, overrides);
    validate(cfg);
    return cfg;
}

std::string render_config(const ExperimentConfig& cfg) {
    std::string out;
    for (const auto& f : fields()) {
        out += f.key;
        out += " = ";
        out += f.get(cfg);
        out += '\n';
    }
    return out;
}

GridSpec parse_grid(std::string_view text) {
    const auto parts = split_commas(text);
    if (parts.size() != 6) throw ConfigError("grid needs NX,NP,XMIN,XMAX,PMIN,PMAX");
    const Setting ctx{"grid", std::string(text), "--grid"};
    GridSpec g;
    g.nx = to_integer<std::size_t>(parts[0], ctx);
    g.np = to_integer<std::size_t>(parts[1], ctx);
    g.x_min = to_double(parts[2], ctx);
    g.x_max = to_double(parts[3], ctx);
    g.p_min = to_double(parts[4], ctx);
    g.p_max = to_double(parts[5], ctx);
    return g;
}

}  // namespace colldec
