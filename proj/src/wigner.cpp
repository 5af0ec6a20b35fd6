#include "colldec/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "colldec/kinematics.hpp"
#include "colldec/quadrature.hpp"
#include "colldec/support.hpp"

namespace colldec {

namespace {

constexpr double kPi = std::numbers::pi;

double envelope(double xq, double pq, double xc, double pc, double sigma, double hbar) {
    const double dx = (xq - xc) / sigma;
    const double dp = sigma * (pq - pc) / hbar;
    return std::exp(-dx * dx - dp * dp);
}

// Below this prefactor a density-matrix term contributes nothing at double
// precision and its y-integral is skipped.
constexpr double kNegligibleTerm = 1e-18;

// Half-width of each y window in units of sigma; the integrand there is
// below e^{-81} relative to its peak.
constexpr double kWindowSigmas = 9.0;

}  // namespace

double GridSpec::x_at(std::size_t i) const {
    return x_min + (x_max - x_min) * static_cast<double>(i) / static_cast<double>(nx - 1);
}

double GridSpec::p_at(std::size_t j) const {
    return p_min + (p_max - p_min) * static_cast<double>(j) / static_cast<double>(np - 1);
}

void validate(const GridSpec& spec) {
    const bool finite = std::isfinite(spec.x_min) && std::isfinite(spec.x_max) &&
                        std::isfinite(spec.p_min) && std::isfinite(spec.p_max);
    if (!finite) throw std::invalid_argument("grid bounds must be finite");
    if (spec.nx < 2 || spec.np < 2) throw std::invalid_argument("grid needs at least 2 nodes per axis");
    if (!(spec.x_max > spec.x_min) || !(spec.p_max > spec.p_min)) {
        throw std::invalid_argument("grid bounds must satisfy max > min");
    }
}

double cross_term_phase(const CatState& cat, double xq, double pq, const Constants& consts) {
    const CatDescriptors d = cat_descriptors(cat);
    const double hbar = consts.hbar;
    return cat.phi + (d.x_A * d.p_D - d.p_A * d.x_D) / (2.0 * hbar) + d.x_D * (d.p_A - pq) / hbar -
           d.p_D * (d.x_A - xq) / hbar;
}

double wigner_at(const CatState& cat, double xq, double pq, const Constants& consts) {
    const double hbar = consts.hbar;
    const double sigma = cat.a.sigma;
    const double norm = 1.0 / (kPi * hbar);
    if (is_single_packet(cat)) return norm * envelope(xq, pq, cat.a.x, cat.a.p, sigma, hbar);

    double w = envelope(xq, pq, cat.a.x, cat.a.p, sigma, hbar) +
               envelope(xq, pq, cat.b.x, cat.b.p, sigma, hbar);
    if (cat.c != 0.0) {
        const CatDescriptors d = cat_descriptors(cat);
        w += 2.0 * cat.c * envelope(xq, pq, d.x_A, d.p_A, sigma, hbar) *
             std::cos(cross_term_phase(cat, xq, pq, consts));
    }
    return norm * w;
}

WignerFn wigner_evaluator(const CatState& cat, const Constants& consts) {
    return [cat, consts](double xq, double pq) { return wigner_at(cat, xq, pq, consts); };
}

WignerGrid sample_grid(const WignerFn& w, const GridSpec& spec, unsigned workers) {
    validate(spec);
    WignerGrid grid{spec, std::vector<double>(spec.nx * spec.np)};
    parallel_for(spec.np, workers, [&](std::size_t j) {
        const double pq = spec.p_at(j);
        for (std::size_t i = 0; i < spec.nx; ++i) grid.values[i + spec.nx * j] = w(spec.x_at(i), pq);
    });
    return grid;
}

WignerGrid wigner_grid(const CatState& cat, const GridSpec& spec, const Constants& consts,
                       unsigned workers) {
    return sample_grid(wigner_evaluator(cat, consts), spec, workers);
}

WignerFn free_evolve_wigner(const CatState& cat, double t, const Tracer& tracer,
                            const Constants& consts) {
    if (t < 0.0) throw std::invalid_argument("free evolution needs t >= 0");
    const double shear = t / tracer.m;
    return [cat, consts, shear](double xq, double pq) {
        return wigner_at(cat, xq - pq * shear, pq, consts);
    };
}

WignerFn mixture_wigner(WignerFn w0, WignerFn w1, double rate, double t) {
    const double weight = rate * t;
    if (!(weight >= 0.0 && weight <= 1.0)) {
        throw std::domain_error("short-time mixture needs 0 <= R t <= 1");
    }
    return [w0 = std::move(w0), w1 = std::move(w1), weight](double xq, double pq) {
        return (1.0 - weight) * w0(xq, pq) + weight * w1(xq, pq);
    };
}

double wigner_transform_at(const CatState& cat, double xq, double pq, const Constants& consts) {
    const double hbar = consts.hbar;
    const double sigma = cat.a.sigma;
    const bool single = is_single_packet(cat);

    const double p_scale = std::abs(pq) + std::max(std::abs(cat.a.p), std::abs(cat.b.p));
    const double freq = 2.0 * p_scale / hbar;
    const double piece = freq > 0.0 ? std::min(sigma, 4.0 * kPi / freq) : sigma;

    QuadratureOptions opts;
    opts.abs_tol = 1e-11;

    // Re Int dy psi_1(xq + y) conj(psi_2(xq - y)) e^{-2 i pq y / hbar}, restricted to
    // the window where the product is non-negligible. Imaginary parts cancel
    // between the hermitian-conjugate pairs of terms.
    auto term = [&](const GaussianPacket& left, const GaussianPacket& right,
                    std::complex<double> weight) -> double {
        const double xc = 0.5 * (left.x + right.x);
        const double u = (xq - xc) / sigma;
        if (std::abs(weight) * std::exp(-u * u) < kNegligibleTerm) return 0.0;
        const double y0 = 0.5 * (left.x - right.x);
        const double lo = y0 - kWindowSigmas * sigma;
        const double hi = y0 + kWindowSigmas * sigma;
        std::vector<double> cuts;
        for (double y = lo + piece; y < hi; y += piece) cuts.push_back(y);

        auto integrand = [&](double y) {
            return (weight * packet_wavefunction_at(left, xq + y, consts) *
                    std::conj(packet_wavefunction_at(right, xq - y, consts)) *
                    std::polar(1.0, -2.0 * pq * y / hbar))
                .real();
        };
        return integrate(integrand, lo, hi, opts, cuts);
    };

    double total = term(cat.a, cat.a, 1.0);
    if (!single) {
        total += term(cat.b, cat.b, 1.0);
        total += term(cat.a, cat.b, std::polar(cat.c, cat.phi));
        total += term(cat.b, cat.a, std::polar(cat.c, -cat.phi));
    }
    return total / (kPi * hbar);
}

WignerGrid wigner_oracle(const CatState& cat, const GridSpec& spec, const Constants& consts,
                         unsigned workers) {
    validate(cat);
    return sample_grid(
        [&](double xq, double pq) { return wigner_transform_at(cat, xq, pq, consts); }, spec,
        workers);
}

PhasePoint interference_antinode(const CatState& cat, const Constants& consts) {
    const CatDescriptors d = cat_descriptors(cat);
    const double sigma = cat.a.sigma;
    const double theta0 = phase_invariant(cat, consts);
    // Gradient of the cosine argument in (x/sigma, p sigma/hbar) coordinates.
    const double gu = d.p_D * sigma / consts.hbar;
    const double gv = -d.x_D / sigma;
    const double g2 = gu * gu + gv * gv;
    if (g2 == 0.0) return {d.x_A, d.p_A};
    const double shift = 2.0 * kPi * std::round(theta0 / (2.0 * kPi)) - theta0;
    return {d.x_A + sigma * shift * gu / g2, d.p_A + consts.hbar / sigma * shift * gv / g2};
}

double interference_metric_at(const WignerFn& w_ref, PhasePoint ref_point, const WignerFn& w_test,
                              PhasePoint test_point) {
    const double ref = w_ref(ref_point.x, ref_point.p);
    if (!(std::abs(ref) >= 1e-12)) {
        throw std::domain_error("reference Wigner function vanishes at the antinode");
    }
    return 1.0 - w_test(test_point.x, test_point.p) / ref;
}

double interference_metric(const WignerFn& w_ref, const WignerFn& w_test, const CatState& cat0,
                           const Constants& consts) {
    if (!(cat0.c > 0.0)) throw std::domain_error("interference metric needs c > 0");
    const PhasePoint star = interference_antinode(cat0, consts);
    return interference_metric_at(w_ref, star, w_test, star);
}

double grid_integral(const WignerGrid& grid) {
    const GridSpec& s = grid.spec;
    const double hx = (s.x_max - s.x_min) / static_cast<double>(s.nx - 1);
    const double hp = (s.p_max - s.p_min) / static_cast<double>(s.np - 1);
    double sum = 0.0;
    for (std::size_t j = 0; j < s.np; ++j) {
        const double wj = (j == 0 || j + 1 == s.np) ? 0.5 : 1.0;
        for (std::size_t i = 0; i < s.nx; ++i) {
            const double wi = (i == 0 || i + 1 == s.nx) ? 0.5 : 1.0;
            sum += wi * wj * grid.at(i, j);
        }
    }
    return sum * hx * hp;
}

WignerGrid grid_difference(const WignerGrid& after, const WignerGrid& before) {
    if (after.values.size() != before.values.size()) {
        throw std::invalid_argument("grid shapes differ");
    }
    WignerGrid out = after;
    for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] -= before.values[k];
    return out;
}

void write_grid_csv(std::ostream& out, const WignerGrid& grid) {
    const GridSpec& s = grid.spec;
    out << "x,p,w\n";
    for (std::size_t j = 0; j < s.np; ++j) {
        const std::string p = format_double(s.p_at(j));
        for (std::size_t i = 0; i < s.nx; ++i) {
            out << format_double(s.x_at(i)) << ',' << p << ',' << format_double(grid.at(i, j))
                << '\n';
        }
    }
}

void write_grid_csv(const std::filesystem::path& path, const WignerGrid& grid) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_grid_csv(out, grid);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace colldec
