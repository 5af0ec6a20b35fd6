#include "colldec/decoherence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "colldec/quadrature.hpp"
#include "colldec/support.hpp"

namespace colldec {

namespace {

constexpr double kPi = std::numbers::pi;

// e^{-u^2} < 3e-16 beyond this point; the tail contributes < 1e-17.
constexpr double kGaussCutoff = 6.0;

// Above this argument the asymptotic Dawson series is exact to rounding.
constexpr double kAsymptoticA = 50.0;

// F(x) ~ 1/(2x) sum_n (2n-1)!! / (2x^2)^n for large x.
double dawson_asymptotic(double x) {
    const double inv = 1.0 / (2.0 * x * x);
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n < 40; ++n) {
        term *= (2.0 * n - 1.0) * inv;
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum / (2.0 * x);
}

double sine_gauss_positive(double a) {
    if (a >= kAsymptoticA) return dawson_asymptotic(0.5 * a);
    // One Gauss-Kronrod panel per oscillation period gives 15 nodes a period.
    const double period = 2.0 * kPi / a;
    std::vector<double> cuts;
    for (double u = period; u < kGaussCutoff; u += period) cuts.push_back(u);
    QuadratureOptions opts;
    opts.abs_tol = 1e-14;
    return integrate([a](double u) { return std::exp(-u * u) * std::sin(a * u); }, 0.0, kGaussCutoff,
                     opts, cuts);
}

double thermal_momentum(const GasEnvironment& env) {
    return std::sqrt(2.0 * env.m_g * env.consts.k_B * sampling_temperature(env));
}

// Mean and M2 of one stream of per-sample values (Welford), merged in a fixed
// order with Chan's pairwise update.
struct Moments {
    double n = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double v) {
        n += 1.0;
        const double delta = v - mean;
        mean += delta / n;
        m2 += delta * (v - mean);
    }

    void merge(const Moments& o) {
        if (o.n == 0.0) return;
        const double total = n + o.n;
        const double delta = o.mean - mean;
        mean += delta * o.n / total;
        m2 += o.m2 + delta * delta * n * o.n / total;
        n = total;
    }

    double std_error() const { return n > 1.0 ? std::sqrt(m2 / (n - 1.0) / n) : 0.0; }
};

struct BlockMoments {
    Moments ratio;
    Moments damped;
    Moments phase;
};

std::size_t block_count(std::size_t n) { return (n + kMcBlockSize - 1) / kMcBlockSize; }

template <typename Fn>
void for_block_samples(const GasEnvironment& env, double t, std::size_t n, std::uint64_t seed,
                       std::size_t block, Fn&& fn) {
    RandomStream stream = RandomStream::derive(seed, block);
    const std::size_t begin = block * kMcBlockSize;
    const std::size_t end = std::min(n, begin + kMcBlockSize);
    for (std::size_t k = begin; k < end; ++k) fn(k, sample_collision(env, t, stream));
}

}  // namespace

double sine_gauss_integral(double a) {
    if (!std::isfinite(a)) throw std::invalid_argument("sine_gauss_integral needs a finite argument");
    if (a == 0.0) return 0.0;
    return a > 0.0 ? sine_gauss_positive(a) : -sine_gauss_positive(-a);
}

double position_separation_parameter(double x_D, const GasEnvironment& env) {
    return 2.0 * x_D * thermal_momentum(env) / env.consts.hbar;
}

double position_coherence_after(double s) {
    return 1.0 - position_decoherence_s(s);
}

double position_decoherence_s(double s) {
    if (s < 0.0) throw std::invalid_argument("separation parameter s must be non-negative");
    return s * sine_gauss_integral(s);
}

double position_decoherence_per_collision(double x_D, const GasEnvironment& env) {
    if (!std::isfinite(x_D)) throw std::invalid_argument("x_D must be finite");
    return position_decoherence_s(std::abs(position_separation_parameter(x_D, env)));
}

double position_decoherence_rate(double x_D, const GasEnvironment& env) {
    return collision_rate(env) * position_decoherence_per_collision(x_D, env);
}

double momentum_separation_parameter(double p_D, const Tracer& tracer, double t,
                                     const GasEnvironment& env) {
    return t * thermal_momentum(env) * p_D / (tracer.m * env.consts.hbar);
}

double momentum_decoherence_r(double r) {
    r = std::abs(r);
    if (r < 1e-2) {
        const double r2 = r * r;
        return r2 * (2.0 / 3.0 - r2 * (4.0 / 15.0 - r2 * 8.0 / 105.0));
    }
    return 1.0 - sine_gauss_integral(2.0 * r) / r;
}

double momentum_decoherence_per_collision(double p_D, const Tracer& tracer, double t,
                                          const GasEnvironment& env) {
    if (!(t > 0.0)) throw std::invalid_argument("momentum decoherence needs t > 0");
    return momentum_decoherence_r(momentum_separation_parameter(p_D, tracer, t, env));
}

double time_averaged_position_decoherence(double p_D, const Tracer& tracer, double t,
                                          const GasEnvironment& env) {
    if (!(t > 0.0)) throw std::invalid_argument("time average needs t > 0");
    if (p_D == 0.0) return 0.0;
    QuadratureOptions opts;
    opts.abs_tol = 1e-12 * t;
    const double integral = integrate(
        [&](double tp) { return position_decoherence_per_collision(p_D * tp / tracer.m, env); }, 0.0,
        t, opts);
    return integral / t;
}

MeasurementDecoherence measurement_decoherence(const CatDescriptors& desc, double sigma,
                                               MassRatio ratio, const Constants& consts) {
    if (!(sigma > 0.0)) throw std::invalid_argument("packet width must be positive");
    const double a = ratio.alpha;
    const double xs = desc.x_D / sigma;
    const double ps = sigma * desc.p_D / consts.hbar;
    MeasurementDecoherence out;
    // 1 - c-bar without cancellation for weak measurements
    out.exact = -std::expm1(-a / ((1.0 + a) * (1.0 + a)) * (xs * xs + ps * ps));
    out.position_approx = a * xs * xs;
    out.momentum_approx = a * ps * ps;
    return out;
}

double breuer_rate(double p, const Tracer& tracer, const GasEnvironment& env, double sigma_cs) {
    if (!(sigma_cs > 0.0)) throw std::invalid_argument("scattering cross-section must be positive");
    const double v = p / tracer.m;
    return 8.0 * std::sqrt(2.0 * kPi) * sigma_cs * env.n_g / 3.0 * v * v *
           std::sqrt(env.m_g / (env.consts.k_B * env.T));
}

std::vector<CollisionSample> draw_collisions(const GasEnvironment& env, double t, std::size_t n,
                                             std::uint64_t seed) {
    std::vector<CollisionSample> out(n);
    for (std::size_t b = 0; b < block_count(n); ++b) {
        for_block_samples(env, t, n, seed, b,
                          [&](std::size_t k, const CollisionSample& s) { out[k] = s; });
    }
    return out;
}

McDecoherence mc_decoherence(const CatState& cat, const GasEnvironment& env, const Tracer& tracer,
                             double t, const McOptions& opts) {
    validate(cat);
    validate(env);
    validate(tracer);
    if (opts.n_samples < 2) throw std::invalid_argument("Monte-Carlo needs at least 2 samples");
    if (!(cat.c > 0.0)) throw std::domain_error("cat has no interference term (c = 0)");

    const Constants& consts = env.consts;
    const MassRatio ratio = mass_ratio(env, tracer);

    McDecoherence out;
    out.regime = regime_report(env, tracer, cat.a.sigma, t);
    out.antinode_point = interference_antinode(cat, consts);
    const PhasePoint star = out.antinode_point;
    out.reference_wigner = wigner_at(cat, star.x, star.p, consts);
    if (!(std::abs(out.reference_wigner) >= 1e-12)) {
        throw std::domain_error("initial Wigner function vanishes at the antinode");
    }
    const double theta0 = cross_term_phase(cat, star.x, star.p, consts);

    std::vector<BlockMoments> blocks(block_count(opts.n_samples));
    parallel_for(blocks.size(), opts.workers, [&](std::size_t b) {
        BlockMoments& m = blocks[b];
        for_block_samples(env, t, opts.n_samples, opts.seed, b,
                          [&](std::size_t, const CollisionSample& s) {
                              const CatState after = collide_cat(cat, s, ratio, consts);
                              const double kick = std::cos(cross_term_phase(after, star.x, star.p, consts) - theta0);
                              m.ratio.add(wigner_at(after, star.x, star.p, consts) / out.reference_wigner);
                              m.damped.add(after.c / cat.c * kick);
                              m.phase.add(kick);
                          });
    });

    BlockMoments total;
    for (const BlockMoments& m : blocks) {
        total.ratio.merge(m.ratio);
        total.damped.merge(m.damped);
        total.phase.merge(m.phase);
    }
    auto estimate = [&](const Moments& m) {
        return McEstimate{1.0 - m.mean, m.std_error(), opts.n_samples, opts.seed};
    };
    out.antinode = estimate(total.ratio);
    out.damped_phase = estimate(total.damped);
    out.phase_averaging = estimate(total.phase);
    return out;
}

WignerFn ensemble_wigner(const CatState& cat, const std::vector<CollisionSample>& samples,
                         MassRatio ratio, const Constants& consts) {
    if (samples.empty()) throw std::invalid_argument("ensemble needs at least one sample");
    std::vector<CatState> cats;
    cats.reserve(samples.size());
    for (const auto& s : samples) cats.push_back(collide_cat(cat, s, ratio, consts));
    return [cats = std::move(cats), consts](double xq, double pq) {
        double sum = 0.0;
        for (const auto& c : cats) sum += wigner_at(c, xq, pq, consts);
        return sum / static_cast<double>(cats.size());
    };
}

void validate(const DecoherenceCurve& curve) {
    if (curve.analytic.size() != curve.abscissa.size() || curve.mc.size() != curve.abscissa.size()) {
        throw std::invalid_argument("decoherence curve columns differ in length");
    }
}

}  // namespace colldec
