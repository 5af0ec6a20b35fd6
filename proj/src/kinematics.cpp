#include "colldec/kinematics.hpp"

#include <cmath>
#include <stdexcept>

namespace colldec {

ClassicalOutcome collide_classical(double x_g, double p_g, double x, double p, MassRatio ratio) {
    const double a = ratio.alpha;
    if (!(a > 0.0)) throw std::invalid_argument("mass ratio must be positive");
    const double inv = 1.0 / (1.0 + a);
    return ClassicalOutcome{
        (2.0 * x - (1.0 - a) * x_g) * inv,
        (2.0 * a * p - (1.0 - a) * p_g) * inv,
        (2.0 * a * x_g + (1.0 - a) * x) * inv,
        (2.0 * p_g + (1.0 - a) * p) * inv,
    };
}

double coherence_damping(const CatDescriptors& desc, double sigma, MassRatio ratio,
                         const Constants& consts) {
    if (!(sigma > 0.0)) throw std::invalid_argument("packet width must be positive");
    const double a = ratio.alpha;
    const double xs = desc.x_D / sigma;
    const double ps = sigma * desc.p_D / consts.hbar;
    return std::exp(-a / ((1.0 + a) * (1.0 + a)) * (xs * xs + ps * ps));
}

double collision_phase(const CatDescriptors& desc, const CollisionSample& sample, MassRatio ratio,
                       const Constants& consts) {
    const double a = ratio.alpha;
    const double num = 2.0 * a * (desc.x_A * desc.p_D - desc.x_D * desc.p_A) +
                       (1.0 - a) * sample.p_g * desc.x_D -
                       a * (1.0 - a) * sample.x_g * desc.p_D;
    return num / ((1.0 + a) * (1.0 + a) * consts.hbar);
}

CatState collide_cat(const CatState& cat, const CollisionSample& sample, MassRatio ratio,
                     const Constants& consts) {
    const CatDescriptors desc = cat_descriptors(cat);
    const auto ta = collide_classical(sample.x_g, sample.p_g, cat.a.x, cat.a.p, ratio);
    const auto tb = collide_classical(sample.x_g, sample.p_g, cat.b.x, cat.b.p, ratio);

    CatState out = cat;
    out.a.x = ta.x;
    out.a.p = ta.p;
    out.b.x = tb.x;
    out.b.p = tb.p;
    out.c = cat.c * coherence_damping(desc, cat.a.sigma, ratio, consts);
    out.phi = cat.phi + collision_phase(desc, sample, ratio, consts);
    return out;
}

double phase_invariant(const CatState& cat, const Constants& consts) {
    const CatDescriptors d = cat_descriptors(cat);
    return cat.phi + (d.x_A * d.p_D - d.p_A * d.x_D) / (2.0 * consts.hbar);
}

}  // namespace colldec
