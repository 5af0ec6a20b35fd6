#include "colldec/thermal_gas.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "colldec/support.hpp"

namespace colldec {

namespace {

constexpr double kPi = std::numbers::pi;

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

double raw_effective_temperature(const GasEnvironment& env) {
    const double hbar = env.consts.hbar;
    return env.T - hbar * hbar / (2.0 * env.m_g * env.consts.k_B * env.sigma_g * env.sigma_g);
}

std::string fmt(double v) { return format_double(v, 6); }

}  // namespace

void validate(const GasEnvironment& env) {
    validate(env.consts);
    if (!positive(env.m_g)) throw std::invalid_argument("gas mass must be positive");
    if (!positive(env.T)) throw std::invalid_argument("temperature must be positive");
    if (!positive(env.n_g)) throw std::invalid_argument("gas density must be positive");
    if (!positive(env.sigma_g)) throw std::invalid_argument("gas packet width must be positive");
    if (!(raw_effective_temperature(env) > 0.0)) {
        throw std::invalid_argument("effective temperature T_sigma_g is not positive; widen sigma_g");
    }
}

GasEnvironment matched_gas(MassRatio ratio, const Tracer& tracer, double sigma, double T, double n_g,
                           const Constants& consts) {
    if (!(ratio.alpha > 0.0)) throw std::invalid_argument("mass ratio must be positive");
    GasEnvironment env;
    env.m_g = ratio.alpha * tracer.m;
    env.T = T;
    env.n_g = n_g;
    env.sigma_g = sigma / std::sqrt(ratio.alpha);
    env.consts = consts;
    return env;
}

MassRatio mass_ratio(const GasEnvironment& env, const Tracer& tracer) {
    return MassRatio{env.m_g / tracer.m};
}

double maxwell_pdf(const GasEnvironment& env, double p) {
    const double a = env.m_g * env.consts.k_B * sampling_temperature(env);
    return std::exp(-p * p / (2.0 * a)) / std::sqrt(2.0 * kPi * a);
}

double effective_temperature(const GasEnvironment& env) {
    const double t_eff = raw_effective_temperature(env);
    if (!(t_eff > 0.0)) {
        throw std::domain_error("effective temperature T_sigma_g is not positive (sigma_g too small)");
    }
    return t_eff;
}

double sampling_temperature(const GasEnvironment& env) {
    return env.use_effective_temperature ? effective_temperature(env) : env.T;
}

double collision_rate(const GasEnvironment& env) {
    return env.n_g * std::sqrt(2.0 * env.consts.k_B * env.T) / std::sqrt(kPi * env.m_g);
}

RegimeReport regime_report(const GasEnvironment& env, const Tracer& tracer, double sigma, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("regime report needs a positive horizon");
    const double hbar = env.consts.hbar;
    const double thermal_p = std::sqrt(env.m_g * env.consts.k_B * env.T);

    RegimeReport r;
    r.r1 = hbar / (env.sigma_g * thermal_p);
    r.r2 = env.n_g * env.sigma_g;
    r.r3 = env.n_g * hbar / thermal_p;
    r.t_c = 2.0 * env.sigma_g * std::sqrt(env.m_g) / std::sqrt(env.consts.k_B * env.T);
    const double gas_side = env.m_g * env.sigma_g * env.sigma_g;
    r.width_match_residual = std::abs(tracer.m * sigma * sigma - gas_side) / gas_side;
    r.effective_temperature = raw_effective_temperature(env);

    if (r.r1 > kRegimeRatioLimit) {
        r.warnings.push_back("gas packets too narrow for complete collisions: hbar/(sigma_g sqrt(m_g k_B T)) = " +
                             fmt(r.r1));
    }
    if (r.r2 > kRegimeRatioLimit) {
        r.warnings.push_back("gas not dilute on the packet scale: n_g sigma_g = " + fmt(r.r2));
    }
    if (r.r3 > kRegimeRatioLimit) {
        r.warnings.push_back("outside the high-temperature low-density limit: n_g hbar/sqrt(m_g k_B T) = " +
                             fmt(r.r3));
    }
    if (t < kCoarseGrainFactor * r.t_c) {
        r.warnings.push_back("horizon t = " + fmt(t) + " is not coarse grained against t_c = " + fmt(r.t_c));
    }
    if (r.width_match_residual > kWidthMatchTolerance) {
        r.warnings.push_back("widths violate m sigma^2 = m_g sigma_g^2: relative residual " +
                             fmt(r.width_match_residual));
    }
    if (!(r.effective_temperature > 0.0)) {
        r.warnings.push_back("effective temperature T_sigma_g is not positive");
    }
    return r;
}

void write_regime_report(std::ostream& out, const RegimeReport& report) {
    out << "r1 = " << format_double(report.r1) << '\n'
        << "r2 = " << format_double(report.r2) << '\n'
        << "r3 = " << format_double(report.r3) << '\n'
        << "t_c = " << format_double(report.t_c) << '\n'
        << "width_match_residual = " << format_double(report.width_match_residual) << '\n'
        << "effective_temperature = " << format_double(report.effective_temperature) << '\n'
        << "warnings = " << report.warnings.size() << '\n';
    for (const auto& w : report.warnings) out << "warning = " << w << '\n';
}

double colliding_momentum_pdf(const GasEnvironment& env, double p_g) {
    const double a = env.m_g * env.consts.k_B * sampling_temperature(env);
    return std::abs(p_g) / (2.0 * a) * std::exp(-p_g * p_g / (2.0 * a));
}

double colliding_position_pdf(const GasEnvironment& env, double t, double x_g) {
    if (!(t > 0.0)) throw std::invalid_argument("colliding position law needs t > 0");
    const double scale = std::sqrt(env.m_g) / (t * std::sqrt(2.0 * env.consts.k_B * sampling_temperature(env)));
    // Int_z^inf e^{-u^2} du = sqrt(pi)/2 erfc(z)
    return scale * 0.5 * std::sqrt(kPi) * std::erfc(std::abs(x_g) * scale);
}

RandomStream::RandomStream(std::uint64_t seed) : engine_(seed) {}

RandomStream RandomStream::derive(std::uint64_t root_seed, std::uint64_t index) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(root_seed), static_cast<std::uint32_t>(root_seed >> 32),
        static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
    };
    RandomStream stream(0);
    stream.engine_.seed(seq);
    return stream;
}

double RandomStream::uniform() {
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

CollisionSample sample_collision(const GasEnvironment& env, double t, RandomStream& stream) {
    if (!(t > 0.0)) throw std::invalid_argument("collision sampling needs t > 0");
    const double scale = std::sqrt(env.m_g * env.consts.k_B * sampling_temperature(env));
    const double magnitude = scale * std::sqrt(-2.0 * std::log(stream.uniform()));
    const double sign = stream.uniform() < 0.5 ? 1.0 : -1.0;
    const double reach = magnitude * t / env.m_g;
    CollisionSample s;
    s.p_g = sign * magnitude;
    s.x_g = -sign * stream.uniform() * reach;
    return s;
}

}  // namespace colldec
