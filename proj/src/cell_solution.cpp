#include "bandvol/cell_solution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bandvol/numerics.hpp"

namespace bandvol {

namespace {

struct SeriesSum {
    double value = 0.0;       // H(xi)
    double slope = 0.0;       // H'(xi)
    double cancellation = 0.0;  // estimated relative roundoff from cancellation
};

// Power series of the Hermite-equation solution H, phi = exp(-xi^2/2) H.
// a_{j+2} = a_j (2j - lambda) / ((j+1)(j+2)), lambda = 2 eps - 1.
// Terms are tracked directly (t_{j+2} = t_j xi^2 (2j-lambda)/((j+1)(j+2)))
// so no separate power grows out of range. Compensated accumulation keeps
// the tail truncation at the 1e-16 level of the partial sums.
SeriesSum hermite_series(double eps, double xi, bool odd) {
    const double lambda = 2.0 * eps - 1.0;
    const double xi2 = xi * xi;

    double j = odd ? 1.0 : 0.0;
    double term = odd ? xi : 1.0;

    double sum_h = 0.0, comp_h = 0.0;
    double sum_jh = 0.0, comp_jh = 0.0;  // sum of j * t_j (= xi * H')
    double max_term = 0.0;
    int count = 0;

    for (;;) {
        double y = term - comp_h;
        double t = sum_h + y;
        comp_h = (t - sum_h) - y;
        sum_h = t;

        y = j * term - comp_jh;
        t = sum_jh + y;
        comp_jh = (t - sum_jh) - y;
        sum_jh = t;

        max_term = std::max(max_term, std::fabs(term));
        ++count;
        if (count > 20000)
            throw std::runtime_error("hermite_series: no convergence");

        const double ratio = xi2 * (2.0 * j - lambda) / ((j + 1.0) * (j + 2.0));
        term *= ratio;
        j += 2.0;

        if (std::fabs(ratio) < 0.9) {
            const double tail =
                std::fabs(term) * 0.9 / (1.0 - std::fabs(ratio) * 0.999);
            const double scale = std::max(std::fabs(sum_h), max_term * 1e-16);
            if (tail <= 1e-16 * std::max(scale, 1e-300) && count > 2) break;
        }
    }

    SeriesSum out;
    out.value = sum_h;
    out.slope = xi != 0.0 ? sum_jh / xi : (odd ? 1.0 : 0.0);
    const double noise = max_term * 1.1e-16 * std::sqrt(double(count));
    out.cancellation =
        noise / std::max({std::fabs(sum_h), std::fabs(sum_jh), 1e-300});
    return out;
}

// Both fundamental solutions by adaptive ODE integration of
// phi'' = (xi^2 - 2 eps) phi, used beyond the series' comfort zone.
void ode_pair(double eps, double xi, ValueSlope& even, ValueSlope& odd) {
    num::State4 y = {1.0, 0.0, 0.0, 1.0};  // [ve, ve', vo, vo']
    const auto rhs = [eps](double t, const num::State4& s) {
        const double q = t * t - 2.0 * eps;
        return num::State4{s[1], q * s[0], s[3], q * s[2]};
    };
    num::integrate_ode(rhs, 0.0, xi, y, 1e-13, 1e-14);
    even = {y[0], y[1]};
    odd = {y[2], y[3]};
}

// Series accuracy below which the evaluator re-runs through the ODE path.
constexpr double kSeriesGuard = 1e-11;

}  // namespace

ValueSlope CellSolution::even_at(double xi) const {
    const double a = std::fabs(xi);
    if (a > domain_bound_)
        throw std::domain_error("CellSolution: |xi| = " + std::to_string(a) +
                                " outside validated domain " +
                                std::to_string(domain_bound_));
    ValueSlope half = even_half_(a);
    if (xi < 0.0) half.slope = -half.slope;
    return half;
}

ValueSlope CellSolution::odd_at(double xi) const {
    const double a = std::fabs(xi);
    if (a > domain_bound_)
        throw std::domain_error("CellSolution: |xi| = " + std::to_string(a) +
                                " outside validated domain " +
                                std::to_string(domain_bound_));
    ValueSlope half = odd_half_(a);
    if (xi < 0.0) half.value = -half.value;
    return half;
}

EdgeValues CellSolution::at_edge(double alpha) const {
    const ValueSlope e = even_at(alpha);
    const ValueSlope o = odd_at(alpha);
    return {e.value, e.slope, o.value, o.slope};
}

CellSolution make_cell_solution(double eps, double domain_bound,
                                CellSolution::Evaluator even_half,
                                CellSolution::Evaluator odd_half) {
    CellSolution sol;
    sol.eps_ = eps;
    sol.domain_bound_ = domain_bound;
    sol.even_half_ = std::move(even_half);
    sol.odd_half_ = std::move(odd_half);
    return sol;
}

CellSolution solve_cell(double eps, const CellSolverOptions& opts) {
    if (!std::isfinite(eps))
        throw std::invalid_argument("solve_cell: eps must be finite");

    const double guard = std::min(kSeriesGuard, opts.rel_tol);
    const double series_switch = opts.series_switch;

    const auto eval = [eps, guard, series_switch](double xi, bool odd) {
        if (xi == 0.0) return odd ? ValueSlope{0.0, 1.0} : ValueSlope{1.0, 0.0};
        if (xi <= series_switch) {
            const SeriesSum s = hermite_series(eps, xi, odd);
            if (s.cancellation <= guard) {
                const double gauss = std::exp(-0.5 * xi * xi);
                return ValueSlope{gauss * s.value,
                                  gauss * (s.slope - xi * s.value)};
            }
        }
        ValueSlope even_v, odd_v;
        ode_pair(eps, xi, even_v, odd_v);
        return odd ? odd_v : even_v;
    };

    return make_cell_solution(
        eps, opts.domain_bound,
        [eval](double xi) { return eval(xi, false); },
        [eval](double xi) { return eval(xi, true); });
}

CellSolver harmonic_cell_solver(const CellSolverOptions& opts) {
    return [opts](double eps) { return solve_cell(eps, opts); };
}

}  // namespace bandvol
