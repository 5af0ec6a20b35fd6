#pragma once

// Particles, Gaussian minimum-uncertainty packets and two-branch cat states.
//
// All quantities are plain doubles in whatever unit system the caller picks;
// Constants carries hbar and k_B (both 1 by default).

#include <complex>

namespace colldec {

struct Constants {
    double hbar = 1.0;
    double k_B = 1.0;
};

struct Tracer {
    double m = 1.0;
};

/// Minimum-uncertainty wave packet |x, p>_sigma.
struct GaussianPacket {
    double x = 0.0;
    double p = 0.0;
    double sigma = 1.0;

    friend bool operator==(const GaussianPacket&, const GaussianPacket&) = default;
};

/// Unnormalized two-branch state
///
///   rho = |a><a| + c e^{+i phi} |a><b| + c e^{-i phi} |b><a| + |b><b|
///
/// Both branches share one width. A packet on its own is stored as a == b
/// with c == 0 (see is_single_packet).
struct CatState {
    GaussianPacket a;
    GaussianPacket b;
    double c = 1.0;
    double phi = 0.0;

    friend bool operator==(const CatState&, const CatState&) = default;
};

struct CatDescriptors {
    double x_A = 0.0;  // (x_a + x_b) / 2
    double x_D = 0.0;  // x_a - x_b
    double p_A = 0.0;
    double p_D = 0.0;
};

void validate(const Constants& consts);
void validate(const Tracer& tracer);
void validate(const GaussianPacket& packet);
void validate(const CatState& cat);

/// Cat with a single branch: coincident packets and no coherence term.
CatState single_packet(const GaussianPacket& packet);
bool is_single_packet(const CatState& cat);

/// Position-space amplitude <xq | x, p>_sigma.
std::complex<double> packet_wavefunction_at(const GaussianPacket& packet, double xq,
                                            const Constants& consts = {});

CatDescriptors cat_descriptors(const CatState& cat);

/// Inverse of cat_descriptors; sigma, c and phi are taken from `shape`.
CatState cat_from_descriptors(const CatDescriptors& desc, const CatState& shape);

/// Transports both packet centers by p t / m. Widths are not spread.
CatState free_evolve_cat(const CatState& cat, double t, const Tracer& tracer);

}  // namespace colldec
