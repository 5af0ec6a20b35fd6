#include "colldec/phase_space.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace colldec {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void validate(const Constants& consts) {
    require(consts.hbar > 0.0 && std::isfinite(consts.hbar), "hbar must be positive");
    require(consts.k_B > 0.0 && std::isfinite(consts.k_B), "k_B must be positive");
}

void validate(const Tracer& tracer) {
    require(tracer.m > 0.0 && std::isfinite(tracer.m), "tracer mass must be positive");
}

void validate(const GaussianPacket& packet) {
    require(std::isfinite(packet.x) && std::isfinite(packet.p), "packet center must be finite");
    require(packet.sigma > 0.0 && std::isfinite(packet.sigma), "packet width must be positive");
}

void validate(const CatState& cat) {
    validate(cat.a);
    validate(cat.b);
    require(cat.a.sigma == cat.b.sigma, "cat branches must share one width");
    require(cat.c >= 0.0 && cat.c <= 1.0, "coherence c must lie in [0, 1]");
    require(std::isfinite(cat.phi), "cat phase must be finite");
}

CatState single_packet(const GaussianPacket& packet) {
    return CatState{packet, packet, 0.0, 0.0};
}

bool is_single_packet(const CatState& cat) {
    return cat.c == 0.0 && cat.a == cat.b;
}

std::complex<double> packet_wavefunction_at(const GaussianPacket& packet, double xq,
                                            const Constants& consts) {
    const double norm = 1.0 / std::sqrt(std::sqrt(std::numbers::pi) * packet.sigma);
    const double d = packet.x - xq;
    const double envelope = norm * std::exp(-d * d / (2.0 * packet.sigma * packet.sigma));
    // e^{-i x p / 2hbar} e^{i xq p / hbar} combined into one phase
    const double phase = packet.p * (xq - 0.5 * packet.x) / consts.hbar;
    return std::polar(envelope, phase);
}

CatDescriptors cat_descriptors(const CatState& cat) {
    return CatDescriptors{
        0.5 * (cat.a.x + cat.b.x),
        cat.a.x - cat.b.x,
        0.5 * (cat.a.p + cat.b.p),
        cat.a.p - cat.b.p,
    };
}

CatState cat_from_descriptors(const CatDescriptors& desc, const CatState& shape) {
    CatState out = shape;
    out.a.x = desc.x_A + 0.5 * desc.x_D;
    out.b.x = desc.x_A - 0.5 * desc.x_D;
    out.a.p = desc.p_A + 0.5 * desc.p_D;
    out.b.p = desc.p_A - 0.5 * desc.p_D;
    return out;
}

CatState free_evolve_cat(const CatState& cat, double t, const Tracer& tracer) {
    if (t < 0.0) throw std::invalid_argument("free evolution needs t >= 0");
    CatState out = cat;
    out.a.x += cat.a.p * t / tracer.m;
    out.b.x += cat.b.p * t / tracer.m;
    return out;
}

}  // namespace colldec
