#pragma once

// Decoherence per collision: closed-form thermal averages, their limits,
// and a Monte-Carlo phase-averaging engine that measures the same quantity
// on sampled post-collision Wigner functions.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "colldec/kinematics.hpp"
#include "colldec/phase_space.hpp"
#include "colldec/thermal_gas.hpp"
#include "colldec/wigner.hpp"

namespace colldec {

/// Int_0^inf e^{-u^2} sin(a u) du, which is the Dawson function at a/2.
/// Absolute accuracy 1e-12; odd in a.
double sine_gauss_integral(double a);

/// Dawson function F(x) = e^{-x^2} Int_0^x e^{t^2} dt.
inline double dawson(double x) { return sine_gauss_integral(2.0 * x); }

/// s = 2 x_D sqrt(2 m_g k_B T) / hbar.
double position_separation_parameter(double x_D, const GasEnvironment& env);

/// Thermally averaged interference amplitude after one collision, 1 - s F(s/2).
/// Negative values mean the fringes came back phase-inverted.
double position_coherence_after(double s);

/// s F(s/2); the complement of position_coherence_after.
double position_decoherence_s(double s);

double position_decoherence_per_collision(double x_D, const GasEnvironment& env);

/// Collision rate times the decoherence per collision.
double position_decoherence_rate(double x_D, const GasEnvironment& env);

/// r = t sqrt(2 m_g k_B T) p_D / (m hbar).
double momentum_separation_parameter(double p_D, const Tracer& tracer, double t,
                                     const GasEnvironment& env);

/// 1 - F(r)/r, with the series 2r^2/3 - 4r^4/15 + 8r^6/105 near r = 0.
double momentum_decoherence_r(double r);

/// Depends on the horizon t: there is no time-independent rate for
/// momentum superpositions.
double momentum_decoherence_per_collision(double p_D, const Tracer& tracer, double t,
                                          const GasEnvironment& env);

/// (1/t) Int_0^t dt' position decoherence at separation x_D = p_D t' / m.
/// Evaluated by quadrature; agrees with momentum_decoherence_per_collision.
double time_averaged_position_decoherence(double p_D, const Tracer& tracer, double t,
                                          const GasEnvironment& env);

/// Decoherence from information exchange alone, 1 - c-bar, with the
/// leading-order forms alpha x_D^2/sigma^2 and alpha sigma^2 p_D^2/hbar^2.
struct MeasurementDecoherence {
    double exact = 0.0;
    double position_approx = 0.0;
    double momentum_approx = 0.0;
};

MeasurementDecoherence measurement_decoherence(const CatDescriptors& desc, double sigma,
                                               MassRatio ratio, const Constants& consts = {});

/// Momentum-superposition decoherence rate of the quantum-trajectory
/// master equation literature, slow-tracer limit:
///   D_p = 8 sqrt(2 pi) sigma_cs n_g / 3 * p^2/m^2 * sqrt(m_g / (k_B T)).
/// Kept for comparison only; it falls with temperature.
double breuer_rate(double p, const Tracer& tracer, const GasEnvironment& env, double sigma_cs);

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
};

struct McOptions {
    std::size_t n_samples = 10000;
    std::uint64_t seed = 1;
    unsigned workers = 0;  // 0: hardware concurrency
};

/// Samples are drawn in blocks of this size; block k uses
/// RandomStream::derive(seed, k). Results do not depend on the worker count.
inline constexpr std::size_t kMcBlockSize = 1024;

/// Three estimators of the decoherence per collision, all evaluated at the
/// antinode (x*, p*) of the initial cat:
///  - antinode:        1 - <W_1(x*, p*)> / W_0(x*, p*), the full post-collision
///                     Wigner function (includes c-bar and envelope drift);
///  - damped_phase:    1 - <c-bar cos Delta_k>;
///  - phase_averaging: 1 - <cos Delta_k>, phase averaging alone, the quantity
///                     the closed-form light-gas formulas describe.
/// Delta_k is the change of the interference cosine argument at (x*, p*).
struct McDecoherence {
    McEstimate antinode;
    McEstimate damped_phase;
    McEstimate phase_averaging;
    PhasePoint antinode_point;
    double reference_wigner = 0.0;
    RegimeReport regime;
};

McDecoherence mc_decoherence(const CatState& cat, const GasEnvironment& env, const Tracer& tracer,
                             double t, const McOptions& opts = {});

/// The collision samples mc_decoherence draws for the same (seed, n).
std::vector<CollisionSample> draw_collisions(const GasEnvironment& env, double t, std::size_t n,
                                             std::uint64_t seed);

/// Average Wigner function of `cat` after one collision with each sample.
WignerFn ensemble_wigner(const CatState& cat, const std::vector<CollisionSample>& samples,
                         MassRatio ratio, const Constants& consts = {});

struct DecoherenceCurve {
    std::vector<double> abscissa;
    std::vector<double> analytic;
    std::vector<McEstimate> mc;
};

void validate(const DecoherenceCurve& curve);

}  // namespace colldec
