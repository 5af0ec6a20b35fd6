#pragma once

// Dilute one-dimensional Maxwell-Boltzmann gas seen by a slow tracer:
// thermal densities, collision rate, validity checks, and the law of the
// gas packet that collides with the tracer within (0, t).

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "colldec/kinematics.hpp"
#include "colldec/phase_space.hpp"

namespace colldec {

struct GasEnvironment {
    double m_g = 1.0;
    double T = 1.0;
    double n_g = 1.0;
    double sigma_g = 1.0;
    Constants consts{};
    /// Draw thermal momenta at T_{sigma_g} instead of T. Off by default:
    /// for wide gas packets the two agree.
    bool use_effective_temperature = false;
};

/// Throws std::invalid_argument on non-positive fields or T_{sigma_g} <= 0.
void validate(const GasEnvironment& env);

/// Gas matched to a tracer cat: m_g = alpha m and sigma_g fixed by
/// m sigma^2 = m_g sigma_g^2.
GasEnvironment matched_gas(MassRatio ratio, const Tracer& tracer, double sigma, double T, double n_g,
                           const Constants& consts = {});

MassRatio mass_ratio(const GasEnvironment& env, const Tracer& tracer);

struct RegimeReport {
    double r1 = 0.0;  // hbar / (sigma_g sqrt(m_g k_B T)), must be << 1
    double r2 = 0.0;  // n_g sigma_g, must be << 1
    double r3 = 0.0;  // n_g hbar / sqrt(m_g k_B T), must be << 1
    double t_c = 0.0;  // collision time 2 sigma_g sqrt(m_g) / sqrt(k_B T)
    double width_match_residual = 0.0;  // |m sigma^2 - m_g sigma_g^2| / (m_g sigma_g^2)
    double effective_temperature = 0.0;
    std::vector<std::string> warnings;
};

inline constexpr double kRegimeRatioLimit = 0.1;
inline constexpr double kCoarseGrainFactor = 10.0;
inline constexpr double kWidthMatchTolerance = 1e-6;

double maxwell_pdf(const GasEnvironment& env, double p);

/// T_{sigma_g} = T - hbar^2 / (2 m_g k_B sigma_g^2). Throws std::domain_error
/// when it is not positive.
double effective_temperature(const GasEnvironment& env);

/// Temperature of the momentum law used for sampling and averaging.
double sampling_temperature(const GasEnvironment& env);

/// R = n_g sqrt(2 k_B T) / sqrt(pi m_g).
double collision_rate(const GasEnvironment& env);

RegimeReport regime_report(const GasEnvironment& env, const Tracer& tracer, double sigma, double t);
void write_regime_report(std::ostream& out, const RegimeReport& report);

/// C(p_g) = |p_g| / (2 m_g k_B T) exp(-p_g^2 / (2 m_g k_B T)).
double colliding_momentum_pdf(const GasEnvironment& env, double p_g);

/// Density of the initial position of a gas particle that collides within
/// (0, t); even in x_g.
double colliding_position_pdf(const GasEnvironment& env, double t, double x_g);

/// Seeded pseudo-random stream (mt19937_64). Streams for parallel work are
/// derived from a root seed and a stream index through std::seed_seq; both
/// algorithms are fully specified, so sequences match across conforming
/// standard libraries.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);
    static RandomStream derive(std::uint64_t root_seed, std::uint64_t index);

    /// Uniform on the open interval (0, 1), 53 random bits.
    double uniform();

private:
    std::mt19937_64 engine_;
};

/// One collision event: |p_g| Rayleigh with scale sqrt(m_g k_B T), random
/// sign, and x_g uniform over the stretch that reaches the tracer within t.
CollisionSample sample_collision(const GasEnvironment& env, double t, RandomStream& stream);

}  // namespace colldec
