#pragma once

#include <functional>

namespace bandvol {

struct ValueSlope {
    double value = 0.0;
    double slope = 0.0;
};

// The four fundamental-solution values at the cell edge xi = alpha.
struct EdgeValues {
    double even_value = 0.0;
    double even_slope = 0.0;
    double odd_value = 0.0;
    double odd_slope = 0.0;
};

struct CellSolverOptions {
    double rel_tol = 1e-10;      // target relative accuracy of the evaluators
    double domain_bound = 8.0;   // validated |xi| range
    double series_switch = 4.0;  // beyond this |xi| the ODE path is used
};

// Fundamental solutions of the in-cell equation phi'' + (2 eps - xi^2) phi = 0
// with phi_e(0) = 1, phi_e'(0) = 0 and phi_o(0) = 0, phi_o'(0) = 1.
// Immutable and safe to share across threads; evaluators are pure.
class CellSolution {
  public:
    using Evaluator = std::function<ValueSlope(double)>;

    double eps() const { return eps_; }
    double domain_bound() const { return domain_bound_; }

    // Value and derivative at xi; parity is applied exactly, so
    // phi_e(-xi) == phi_e(xi) and phi_o(-xi) == -phi_o(xi) bit-for-bit.
    ValueSlope even_at(double xi) const;
    ValueSlope odd_at(double xi) const;

    // All four edge values at xi = alpha. Throws std::domain_error when alpha
    // lies outside the validated domain.
    EdgeValues at_edge(double alpha) const;

    friend CellSolution make_cell_solution(double eps, double domain_bound,
                                           Evaluator even_half,
                                           Evaluator odd_half);

  private:
    CellSolution() = default;
    double eps_ = 0.0;
    double domain_bound_ = 0.0;
    Evaluator even_half_;  // evaluated on xi >= 0 only
    Evaluator odd_half_;
};

// Solves the harmonic cell equation at energy eps (units hbar*omega).
// Throws std::invalid_argument for non-finite eps.
CellSolution solve_cell(double eps, const CellSolverOptions& opts = {});

// Assembles a CellSolution from caller-supplied half-axis evaluators. Used by
// test harnesses to swap in alternative cell potentials; the evaluators must
// satisfy the canonical initial conditions at xi = 0.
CellSolution make_cell_solution(double eps, double domain_bound,
                                CellSolution::Evaluator even_half,
                                CellSolution::Evaluator odd_half);

// eps -> CellSolution factory. Band-structure operations take one of these so
// the in-cell problem is a swappable dependency.
using CellSolver = std::function<CellSolution(double)>;

// The production solver: harmonic in-cell potential.
CellSolver harmonic_cell_solver(const CellSolverOptions& opts = {});

}  // namespace bandvol
