#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "colldec/kinematics.hpp"

using namespace colldec;

namespace {

const CatState kFig2Cat{{15.0, 0.0, 4.0}, {0.0, 1.5, 4.0}};

double wrap(double angle) { return std::remainder(angle, 2.0 * std::numbers::pi); }

}  // namespace

TEST_CASE("equal masses exchange position and momentum") {
    const auto o = collide_classical(2.0, -1.0, 0.0, 0.0, MassRatio{1.0});
    CHECK(o.x_g == 0.0);
    CHECK(o.p_g == 0.0);
    CHECK(o.x == 2.0);
    CHECK(o.p == -1.0);
}

TEST_CASE("alpha = 1 is an exact swap for arbitrary inputs") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (int k = 0; k < 1000; ++k) {
        const double xg = u(rng), pg = u(rng), x = u(rng), p = u(rng);
        const auto o = collide_classical(xg, pg, x, p, MassRatio{1.0});
        CHECK(o.x == xg);
        CHECK(o.p == pg);
        CHECK(o.x_g == x);
        CHECK(o.p_g == p);
    }
}

TEST_CASE("light gas limit reflects the gas particle") {
    const double tiny = 1e-13;
    const auto o = collide_classical(5.0, -2.0, 1.0, 0.5, MassRatio{tiny});
    CHECK(o.x == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(o.p == doctest::Approx(0.5 + 2.0 * -2.0).epsilon(1e-11));
    CHECK(o.x_g == doctest::Approx(2.0 * 1.0 - 5.0).epsilon(1e-11));
    CHECK(o.p_g == doctest::Approx(2.0).epsilon(1e-11));
}

TEST_CASE("collision with the figure 2 gas packet") {
    const auto o = collide_classical(100.0, -1.0, 0.0, 0.0, MassRatio{0.04});
    CHECK(o.x == doctest::Approx(7.6923076923076923).epsilon(1e-15));
    CHECK(o.p == doctest::Approx(-1.9230769230769231).epsilon(1e-15));
    CHECK(o.x_g == doctest::Approx(-92.307692307692307).epsilon(1e-15));
    CHECK(o.p_g == doctest::Approx(0.92307692307692307).epsilon(1e-15));
    CHECK(o.p + o.p_g == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("collisions conserve momentum and kinetic energy") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    std::uniform_real_distribution<double> la(-6.0, 0.0);
    for (int k = 0; k < 10000; ++k) {
        const double alpha = std::pow(10.0, la(rng));
        const double m = 1.0, m_g = alpha * m;
        const double xg = u(rng), pg = u(rng), x = u(rng), p = u(rng);
        const auto o = collide_classical(xg, pg, x, p, MassRatio{alpha});
        const double p_in = p + pg;
        const double e_in = p * p / (2 * m) + pg * pg / (2 * m_g);
        const double scale = std::abs(p) + std::abs(pg);
        CHECK(std::abs(o.p + o.p_g - p_in) <= 1e-12 * scale);
        CHECK(o.p * o.p / (2 * m) + o.p_g * o.p_g / (2 * m_g) == doctest::Approx(e_in).epsilon(1e-12));
    }
}

TEST_CASE("non-positive mass ratio is rejected") {
    CHECK_THROWS_AS(collide_classical(1.0, 1.0, 0.0, 0.0, MassRatio{0.0}), std::invalid_argument);
    CHECK_THROWS_AS(collide_classical(1.0, 1.0, 0.0, 0.0, MassRatio{-0.5}), std::invalid_argument);
}

TEST_CASE("coherence damping") {
    CHECK(coherence_damping(CatDescriptors{3.0, 0.0, 1.0, 0.0}, 2.0, MassRatio{0.3}) == 1.0);
    CHECK(coherence_damping(cat_descriptors(kFig2Cat), 4.0, MassRatio{1e-15}) == doctest::Approx(1.0));
    CHECK(coherence_damping(cat_descriptors(kFig2Cat), 4.0, MassRatio{0.04}) ==
          doctest::Approx(0.157013448735309).epsilon(1e-13));
    // position cat of the sweeps
    CHECK(coherence_damping(CatDescriptors{0.0, 40.0, 0.0, 0.0}, 4.0, MassRatio{1e-4}) ==
          doctest::Approx(1.0 - 0.00994818644616030).epsilon(1e-13));
    // alpha = 1: exponent (x_D^2/sigma^2 + sigma^2 p_D^2/hbar^2) / 4
    const CatDescriptors d{0.0, 3.0, 0.0, 0.5};
    CHECK(coherence_damping(d, 2.0, MassRatio{1.0}) == doctest::Approx(std::exp(-(9.0 / 4.0 + 4.0 * 0.25) / 4.0)));
    CHECK_THROWS_AS(coherence_damping(d, 0.0, MassRatio{1.0}), std::invalid_argument);
}

TEST_CASE("coherence damping does not depend on the collision sample") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    const CatState first = collide_cat(kFig2Cat, CollisionSample{u(rng), u(rng)}, MassRatio{0.04});
    for (int k = 0; k < 100; ++k) {
        const CatState after = collide_cat(kFig2Cat, CollisionSample{u(rng), u(rng)}, MassRatio{0.04});
        CHECK(after.c == first.c);
    }
}

TEST_CASE("collision phase") {
    CHECK(collision_phase(CatDescriptors{5.0, 0.0, 2.0, 0.0}, CollisionSample{3.0, -4.0}, MassRatio{0.2}) == 0.0);
    CHECK(collision_phase(CatDescriptors{0.0, 15.0, 0.0, 0.0}, CollisionSample{100.0, -1.0}, MassRatio{0.0}) ==
          -15.0);
    CHECK(collision_phase(cat_descriptors(kFig2Cat), CollisionSample{100.0, -1.0}, MassRatio{0.04}) ==
          doctest::Approx(-9.65236686390532).epsilon(1e-13));
    CHECK(collision_phase(cat_descriptors(kFig2Cat), CollisionSample{100.0, -1.0}, MassRatio{0.04},
                          Constants{2.0, 1.0}) == doctest::Approx(-9.65236686390532 / 2.0).epsilon(1e-13));
}

TEST_CASE("collide_cat on the figure 2 cat") {
    const CatState after = collide_cat(kFig2Cat, CollisionSample{100.0, -1.0}, MassRatio{0.04});
    const auto ta = collide_classical(100.0, -1.0, 15.0, 0.0, MassRatio{0.04});
    const auto tb = collide_classical(100.0, -1.0, 0.0, 1.5, MassRatio{0.04});
    CHECK(after.a.x == ta.x);
    CHECK(after.a.p == ta.p);
    CHECK(after.b.x == tb.x);
    CHECK(after.b.p == tb.p);
    CHECK(after.a.sigma == 4.0);
    CHECK(after.c == doctest::Approx(0.157013448735309).epsilon(1e-13));
    CHECK(after.phi == doctest::Approx(-9.65236686390532).epsilon(1e-13));
}

TEST_CASE("coincident branches keep c and phi") {
    const CatState cat{{2.0, 1.0, 1.0}, {2.0, 1.0, 1.0}, 0.7, 0.3};
    const CatState after = collide_cat(cat, CollisionSample{50.0, -3.0}, MassRatio{0.1});
    CHECK(after.c == 0.7);
    CHECK(after.phi == 0.3);
    CHECK(after.a.x != cat.a.x);
    CHECK(after.a == after.b);
}

TEST_CASE("equal-mass collision merges both branches") {
    const CatState cat{{3.0, 0.4, 2.0}, {-1.0, -0.6, 2.0}};
    const CatState after = collide_cat(cat, CollisionSample{10.0, -2.0}, MassRatio{1.0});
    CHECK(after.a.x == 10.0);
    CHECK(after.b.x == 10.0);
    CHECK(after.a.p == -2.0);
    CHECK(after.b.p == -2.0);
    CHECK(after.c == doctest::Approx(std::exp(-(16.0 / 4.0 + 4.0 * 1.0) / 4.0)));
}

TEST_CASE("phase invariant") {
    CHECK(phase_invariant(kFig2Cat) == -11.25);
    const CatState after = collide_cat(kFig2Cat, CollisionSample{100.0, -1.0}, MassRatio{0.04});
    CHECK(phase_invariant(after) == doctest::Approx(-11.25).epsilon(1e-14));

    const CatState flat{{1.0, 2.0, 1.0}, {1.0, 2.0, 1.0}};
    CHECK(phase_invariant(flat) == 0.0);
    CHECK(phase_invariant(collide_cat(flat, CollisionSample{-7.0, 3.0}, MassRatio{0.3})) == 0.0);
}

TEST_CASE("phase invariant survives random collisions") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-30.0, 30.0);
    std::uniform_real_distribution<double> la(-5.0, 0.0);
    for (int k = 0; k < 2000; ++k) {
        const double sigma = 1.0 + std::abs(u(rng)) / 10.0;
        const CatState cat{{u(rng), u(rng) / 10.0, sigma}, {u(rng), u(rng) / 10.0, sigma}, 1.0, u(rng)};
        const CollisionSample s{u(rng) * 10.0, u(rng) / 10.0};
        const CatState after = collide_cat(cat, s, MassRatio{std::pow(10.0, la(rng))});
        const double before = phase_invariant(cat);
        CHECK(std::abs(phase_invariant(after) - before) <= 1e-12 * std::max(1.0, std::abs(before)) * 100.0);
    }
}

TEST_CASE("branch differences contract by (1 - alpha) / (1 + alpha)") {
    const double alpha = 0.25;
    const CatState cat{{4.0, 0.5, 1.0}, {-2.0, -1.5, 1.0}};
    const auto before = cat_descriptors(cat);
    const auto after = cat_descriptors(collide_cat(cat, CollisionSample{30.0, -2.0}, MassRatio{alpha}));
    const double f = (1.0 - alpha) / (1.0 + alpha);
    CHECK(after.x_D == doctest::Approx(f * before.x_D).epsilon(1e-15));
    CHECK(after.p_D == doctest::Approx(f * before.p_D).epsilon(1e-15));
}

TEST_CASE("collisions compose multiplicatively on c and additively on phi") {
    const MassRatio ratio{0.01};
    const CatState cat{{10.0, 0.0, 3.0}, {-10.0, 0.0, 3.0}};
    const CollisionSample s1{50.0, -0.3}, s2{-20.0, 0.4};
    const CatState once = collide_cat(cat, s1, ratio);
    const CatState twice = collide_cat(once, s2, ratio);
    CHECK(twice.c == doctest::Approx(once.c * coherence_damping(cat_descriptors(once), 3.0, ratio)));
    CHECK(twice.phi == doctest::Approx(once.phi + collision_phase(cat_descriptors(once), s2, ratio)));
}

// The scattering picture: each product |x,p>|x_g,p_g> of Gaussian packets is
// mapped to e^{i chi} |x-bar,p-bar>|x-bar_g,p-bar_g>, with chi the difference
// of the x p / 2 hbar phase conventions before and after. Tracing out the gas
// leaves e^{i(chi_a - chi_b)} <g_b|g_a> on |a><b|, which must equal c-bar e^{i phi-bar}.
TEST_CASE("damping and phase agree with the overlap of the scattered gas packets") {
    using boost::math::quadrature::gauss_kronrod;
    struct Case {
        CatState cat;
        CollisionSample s;
        double alpha;
    };
    const Case cases[] = {
        {kFig2Cat, {100.0, -1.0}, 0.04},
        {CatState{{2.0, 0.3, 1.5}, {-1.0, -0.2, 1.5}}, {12.0, -0.7}, 0.2},
        {CatState{{0.0, 1.2, 4.0}, {0.0, -1.2, 4.0}}, {-30.0, 0.05}, 0.01},
    };
    for (const auto& [cat, s, alpha] : cases) {
        const MassRatio ratio{alpha};
        const double sigma_g = cat.a.sigma / std::sqrt(alpha);
        auto branch = [&](const GaussianPacket& pk) {
            const auto o = collide_classical(s.x_g, s.p_g, pk.x, pk.p, ratio);
            const double chi = ((pk.x * pk.p + s.x_g * s.p_g) - (o.x * o.p + o.x_g * o.p_g)) / 2.0;
            return std::pair{chi, GaussianPacket{o.x_g, o.p_g, sigma_g}};
        };
        const auto [chi_a, g_a] = branch(cat.a);
        const auto [chi_b, g_b] = branch(cat.b);
        auto overlap = [&](bool imag) {
            const auto f = [&](double q) {
                const auto v = std::conj(packet_wavefunction_at(g_b, q)) * packet_wavefunction_at(g_a, q);
                return imag ? v.imag() : v.real();
            };
            const double lo = std::min(g_a.x, g_b.x) - 12.0 * sigma_g;
            const double hi = std::max(g_a.x, g_b.x) + 12.0 * sigma_g;
            return gauss_kronrod<double, 61>::integrate(f, lo, hi, 25, 1e-13);
        };
        const std::complex<double> z =
            std::polar(1.0, chi_a - chi_b) * std::complex<double>(overlap(false), overlap(true));
        const CatDescriptors d = cat_descriptors(cat);
        CHECK(std::abs(z) == doctest::Approx(coherence_damping(d, cat.a.sigma, ratio)).epsilon(1e-9));
        CHECK(wrap(std::arg(z) - collision_phase(d, s, ratio)) == doctest::Approx(0.0).scale(1.0).epsilon(1e-8));
    }
}
