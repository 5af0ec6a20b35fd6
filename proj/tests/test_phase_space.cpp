#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "colldec/phase_space.hpp"

using namespace colldec;

TEST_CASE("packet amplitude at the centre of a resting packet") {
    const auto psi = packet_wavefunction_at(GaussianPacket{0.0, 0.0, 1.0}, 0.0);
    CHECK(std::abs(psi) == doctest::Approx(1.0 / std::sqrt(std::sqrt(std::numbers::pi))).epsilon(1e-15));
    CHECK(std::abs(psi) == doctest::Approx(0.7511255444649425).epsilon(1e-14));
    CHECK(std::arg(psi) == doctest::Approx(0.0));
}

TEST_CASE("packet phase at its centre is x p / 2 hbar") {
    const auto psi = packet_wavefunction_at(GaussianPacket{2.0, 3.0, 1.0}, 2.0);
    CHECK(std::abs(psi) == doctest::Approx(1.0 / std::sqrt(std::sqrt(std::numbers::pi))).epsilon(1e-15));
    CHECK(std::arg(psi) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("packet is normalised") {
    using boost::math::quadrature::gauss_kronrod;
    for (const GaussianPacket pk : {GaussianPacket{0.0, 0.0, 1.0}, GaussianPacket{-3.0, 2.5, 0.3},
                                    GaussianPacket{40.0, -1.2, 7.0}}) {
        const auto density = [&](double xq) { return std::norm(packet_wavefunction_at(pk, xq)); };
        const double norm = gauss_kronrod<double, 61>::integrate(density, pk.x - 8.0 * pk.sigma,
                                                                 pk.x + 8.0 * pk.sigma, 15, 1e-14);
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("packet amplitude with hbar != 1 carries p xq / hbar") {
    const Constants consts{0.5, 1.0};
    const GaussianPacket pk{1.0, 2.0, 1.5};
    const auto psi = packet_wavefunction_at(pk, 1.7, consts);
    const double expected_phase = 2.0 * (1.7 - 0.5) / 0.5;
    CHECK(std::remainder(std::arg(psi) - expected_phase, 2.0 * std::numbers::pi) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("cat descriptors") {
    SUBCASE("two-packet cat with momentum separation") {
        const CatState cat{{15.0, 0.0, 4.0}, {0.0, 1.5, 4.0}};
        const auto d = cat_descriptors(cat);
        CHECK(d.x_A == 7.5);
        CHECK(d.x_D == 15.0);
        CHECK(d.p_A == 0.75);
        CHECK(d.p_D == -1.5);
    }
    SUBCASE("coincident packets") {
        const CatState cat{{3.0, -2.0, 1.0}, {3.0, -2.0, 1.0}};
        const auto d = cat_descriptors(cat);
        CHECK(d.x_A == 3.0);
        CHECK(d.x_D == 0.0);
        CHECK(d.p_A == -2.0);
        CHECK(d.p_D == 0.0);
    }
    SUBCASE("symmetric position cat") {
        const CatState cat{{20.0, 0.0, 4.0}, {-20.0, 0.0, 4.0}};
        const auto d = cat_descriptors(cat);
        CHECK(d.x_A == 0.0);
        CHECK(d.x_D == 40.0);
        CHECK(d.p_A == 0.0);
        CHECK(d.p_D == 0.0);
    }
}

TEST_CASE("descriptors reconstruct the packet centres") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (int k = 0; k < 200; ++k) {
        const CatState cat{{u(rng), u(rng), 2.0}, {u(rng), u(rng), 2.0}, 0.3, 1.1};
        const CatState back = cat_from_descriptors(cat_descriptors(cat), cat);
        CHECK(back.a.x == doctest::Approx(cat.a.x).epsilon(1e-14));
        CHECK(back.b.x == doctest::Approx(cat.b.x).epsilon(1e-14));
        CHECK(back.a.p == doctest::Approx(cat.a.p).epsilon(1e-14));
        CHECK(back.b.p == doctest::Approx(cat.b.p).epsilon(1e-14));
        CHECK(back.c == cat.c);
        CHECK(back.phi == cat.phi);
    }
}

TEST_CASE("descriptors reconstruct exactly for dyadic centres") {
    const CatState cat{{2.5, -0.75, 1.0}, {-1.25, 3.5, 1.0}};
    CHECK(cat_from_descriptors(cat_descriptors(cat), cat) == cat);
}

TEST_CASE("free evolution transports centres") {
    const Tracer tracer{1.0};
    const CatState cat{{0.0, 1.2, 4.0}, {0.0, -1.2, 4.0}, 0.8, 0.4};

    CHECK(free_evolve_cat(cat, 0.0, tracer) == cat);

    const CatState later = free_evolve_cat(cat, 20.0, tracer);
    CHECK(later.a.x == doctest::Approx(24.0));
    CHECK(later.b.x == doctest::Approx(-24.0));
    CHECK(later.a.p == cat.a.p);
    CHECK(later.a.sigma == cat.a.sigma);
    CHECK(later.c == cat.c);
    CHECK(later.phi == cat.phi);
    CHECK(cat_descriptors(later).x_D - cat_descriptors(cat).x_D == doctest::Approx(48.0));

    const CatState heavy = free_evolve_cat(cat, 20.0, Tracer{4.0});
    CHECK(heavy.a.x == doctest::Approx(6.0));
}

TEST_CASE("free evolution composes") {
    const Tracer tracer{2.0};
    const CatState cat{{1.0, 0.5, 1.0}, {-3.0, -0.25, 1.0}};
    const CatState two_steps = free_evolve_cat(free_evolve_cat(cat, 1.5, tracer), 2.5, tracer);
    const CatState one_step = free_evolve_cat(cat, 4.0, tracer);
    CHECK(two_steps == one_step);
}

TEST_CASE("free evolution rejects negative time") {
    CHECK_THROWS_AS(free_evolve_cat(CatState{}, -1.0, Tracer{}), std::invalid_argument);
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(validate(Constants{0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(Constants{1.0, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(Tracer{0.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(GaussianPacket{0.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(CatState{{0.0, 0.0, 1.0}, {1.0, 0.0, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(validate(CatState{{0.0, 0.0, 1.0}, {1.0, 0.0, 1.0}, 1.5}), std::invalid_argument);
    CHECK_THROWS_AS(validate(CatState{{0.0, 0.0, 1.0}, {1.0, 0.0, 1.0}, -0.1}), std::invalid_argument);
    CHECK_NOTHROW(validate(CatState{{0.0, 0.0, 1.0}, {1.0, 0.0, 1.0}, 0.0}));
}

TEST_CASE("single packet convention") {
    const GaussianPacket pk{1.0, 2.0, 3.0};
    const CatState s = single_packet(pk);
    CHECK(s.a == pk);
    CHECK(s.b == pk);
    CHECK(s.c == 0.0);
    CHECK(is_single_packet(s));
    CHECK_FALSE(is_single_packet(CatState{pk, pk, 1.0}));
    CHECK_FALSE(is_single_packet(CatState{pk, GaussianPacket{0.0, 2.0, 3.0}, 0.0}));
}
