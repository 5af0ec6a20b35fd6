#include "colldec/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

namespace colldec {

namespace {

// Kronrod abscissae (positive half, descending) and weights; the odd
// entries are the embedded 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Segment {
    double a = 0.0;
    double b = 0.0;
    double value = 0.0;
    double error = 0.0;

    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gk15(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * sum;
        if (j % 2 == 1) gauss += kWg[j / 2] * sum;
    }
    return Segment{a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult integrate_adaptive(const Integrand& f, double a, double b,
                                    const QuadratureOptions& opts,
                                    std::span<const double> breakpoints) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw std::invalid_argument("integration limits must be finite");
    }
    QuadratureResult result;
    if (a == b) {
        result.converged = true;
        return result;
    }
    const double sign = b > a ? 1.0 : -1.0;
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);

    std::vector<double> edges{lo};
    for (double x : breakpoints) {
        if (x > edges.back() && x < hi) edges.push_back(x);
    }
    edges.push_back(hi);

    std::priority_queue<Segment> queue;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Segment s = gk15(f, edges[i], edges[i + 1]);
        total += s.value;
        total_err += s.error;
        queue.push(s);
    }

    auto tolerance = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };

    while (total_err > tolerance() && queue.size() < opts.max_intervals) {
        Segment worst = queue.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted in floating point
        queue.pop();
        Segment left = gk15(f, worst.a, mid);
        Segment right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }

    // Re-sum from the segments to shed the rounding of incremental updates.
    double value = 0.0;
    double error = 0.0;
    result.intervals = queue.size();
    while (!queue.empty()) {
        value += queue.top().value;
        error += queue.top().error;
        queue.pop();
    }
    result.value = sign * value;
    result.error = error;
    result.converged = error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(value));
    return result;
}

double integrate(const Integrand& f, double a, double b, const QuadratureOptions& opts,
                 std::span<const double> breakpoints) {
    const QuadratureResult r = integrate_adaptive(f, a, b, opts, breakpoints);
    if (!r.converged) {
        std::ostringstream msg;
        msg << "quadrature did not converge on [" << a << ", " << b << "]: error estimate "
            << r.error << " after " << r.intervals << " intervals";
        throw QuadratureError(msg.str());
    }
    return r.value;
}

}  // namespace colldec
