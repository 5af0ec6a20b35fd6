#pragma once

// Single complete hard-core collision between the tracer and one gas packet.
//
// With the width matching m sigma^2 = m_g sigma_g^2 the outgoing state is a
// product of Gaussian packets whose centers follow the classical elastic
// collision map. Tracing out the gas turns the tracer cat into a cat with
// damped coherence (coherence_damping) and a shifted phase (collision_phase).

#include "colldec/phase_space.hpp"

namespace colldec {

/// alpha = m_g / m.
struct MassRatio {
    double alpha = 0.0;
};

/// Center of the colliding gas packet before the collision.
struct CollisionSample {
    double x_g = 0.0;
    double p_g = 0.0;
};

struct ClassicalOutcome {
    double x_g = 0.0;
    double p_g = 0.0;
    double x = 0.0;
    double p = 0.0;
};

ClassicalOutcome collide_classical(double x_g, double p_g, double x, double p, MassRatio ratio);

/// c-bar: exp[-alpha/(1+alpha)^2 (x_D^2/sigma^2 + sigma^2 p_D^2/hbar^2)].
double coherence_damping(const CatDescriptors& desc, double sigma, MassRatio ratio,
                         const Constants& consts = {});

/// phi-bar, the relative phase a collision with `sample` adds to the cat.
double collision_phase(const CatDescriptors& desc, const CollisionSample& sample, MassRatio ratio,
                       const Constants& consts = {});

/// Post-collision cat. Successive calls compose: c multiplies, phi adds.
CatState collide_cat(const CatState& cat, const CollisionSample& sample, MassRatio ratio,
                     const Constants& consts = {});

/// phi + (x_A p_D - p_A x_D) / (2 hbar); unchanged by collide_cat.
double phase_invariant(const CatState& cat, const Constants& consts = {});

}  // namespace colldec
