#pragma once

#include <array>
#include <functional>

namespace bandvol::num {

// Bracketed scalar root finding (Brent's method). Requires f(a) and f(b) of
// opposite sign; converges to |interval| < tol_abs.
double find_root(const std::function<double(double)>& f, double a, double b,
                 double tol_abs = 1e-13, int max_iter = 200);

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // error estimate
};

// Adaptive Gauss-Kronrod 15(7) integration on [a, b].
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double tol_abs = 1e-12,
                           double tol_rel = 1e-12, int max_depth = 40);

// Dormand-Prince 5(4) adaptive integration of y' = f(t, y) for a fixed-size
// state vector, from t0 to t1. y is updated in place.
using State4 = std::array<double, 4>;
using Deriv4 = std::function<State4(double, const State4&)>;
void integrate_ode(const Deriv4& f, double t0, double t1, State4& y,
                   double rel_tol = 1e-12, double abs_tol = 1e-14);

// Normalized harmonic-oscillator eigenfunction psi_n(xi) and its derivative,
// psi_n = pi^{-1/4} / sqrt(2^n n!) * H_n(xi) * exp(-xi^2/2), evaluated with
// the stable normalized recurrence.
double hermite_function(int n, double xi);
double hermite_function_deriv(int n, double xi);

}  // namespace bandvol::num
