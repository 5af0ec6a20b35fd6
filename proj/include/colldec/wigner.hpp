#pragma once

// Phase-space (Wigner) representation of cat states.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <vector>

#include "colldec/phase_space.hpp"

namespace colldec {

/// W(x, p) as a callable.
using WignerFn = std::function<double(double, double)>;

struct PhasePoint {
    double x = 0.0;
    double p = 0.0;
};

struct GridSpec {
    double x_min = -1.0;
    double x_max = 1.0;
    double p_min = -1.0;
    double p_max = 1.0;
    std::size_t nx = 2;
    std::size_t np = 2;

    double x_at(std::size_t i) const;
    double p_at(std::size_t j) const;
};

void validate(const GridSpec& spec);

/// Node (i, j) lives at values[i + nx * j] (x fastest).
struct WignerGrid {
    GridSpec spec;
    std::vector<double> values;

    double at(std::size_t i, std::size_t j) const { return values[i + spec.nx * j]; }
};

/// Closed-form Wigner function of a cat state: two Gaussian envelopes plus
/// the oscillating interference term. Single packets contribute one envelope.
double wigner_at(const CatState& cat, double xq, double pq, const Constants& consts = {});

/// Argument of the interference cosine at (xq, pq).
double cross_term_phase(const CatState& cat, double xq, double pq, const Constants& consts = {});

WignerFn wigner_evaluator(const CatState& cat, const Constants& consts = {});

/// Samples `w` on every node; fills rows in parallel, output independent of
/// thread count.
WignerGrid sample_grid(const WignerFn& w, const GridSpec& spec, unsigned workers = 0);

WignerGrid wigner_grid(const CatState& cat, const GridSpec& spec, const Constants& consts = {},
                       unsigned workers = 0);

/// Freely evolved Wigner function: W(x - p t / m, p).
WignerFn free_evolve_wigner(const CatState& cat, double t, const Tracer& tracer,
                            const Constants& consts = {});

/// (1 - Rt) w0 + Rt w1; throws std::domain_error unless 0 <= Rt <= 1.
WignerFn mixture_wigner(WignerFn w0, WignerFn w1, double rate, double t);

/// Numerical Wigner transform
///   W(x, p) = 1/(pi hbar) Int dy <x+y| rho |x-y> e^{-2 i p y / hbar}
/// of the cat's density matrix built from packet wavefunctions. Throws
/// QuadratureError if any node fails to converge.
double wigner_transform_at(const CatState& cat, double xq, double pq, const Constants& consts = {});

WignerGrid wigner_oracle(const CatState& cat, const GridSpec& spec, const Constants& consts = {},
                         unsigned workers = 0);

/// Point nearest (x_A, p_A), in units of sigma and hbar/sigma, where the
/// interference cosine argument is a multiple of 2 pi. Falls back to
/// (x_A, p_A) when the cosine argument is constant (x_D = p_D = 0).
PhasePoint interference_antinode(const CatState& cat, const Constants& consts = {});

/// 1 - w_test(x*, p*) / w_ref(x*, p*) at the antinode of cat0.
double interference_metric(const WignerFn& w_ref, const WignerFn& w_test, const CatState& cat0,
                           const Constants& consts = {});

/// 1 - w_test(test_point) / w_ref(ref_point).
double interference_metric_at(const WignerFn& w_ref, PhasePoint ref_point, const WignerFn& w_test,
                              PhasePoint test_point);

/// Trapezoidal integral over the grid rectangle.
double grid_integral(const WignerGrid& grid);

WignerGrid grid_difference(const WignerGrid& after, const WignerGrid& before);

/// CSV with header `x,p,w`, one node per row, x fastest, 17 significant digits.
void write_grid_csv(std::ostream& out, const WignerGrid& grid);
void write_grid_csv(const std::filesystem::path& path, const WignerGrid& grid);

}  // namespace colldec
