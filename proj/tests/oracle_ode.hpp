#pragma once

// Independent reference integrator for the cell equation
// phi'' = (xi^2 - 2 eps) phi, kept deliberately separate from the library's
// evaluation paths (power series / Dormand-Prince): classic fixed-step RK4
// with one Richardson extrapolation, accurate to ~1e-11 over |xi| <= 4.

#include <cmath>

namespace oracle {

struct Fundamental {
    double even_value, even_slope;
    double odd_value, odd_slope;
};

namespace detail {

inline Fundamental rk4_pair(double eps, double xi, int n_steps) {
    double y[4] = {1.0, 0.0, 0.0, 1.0};  // [phi_e, phi_e', phi_o, phi_o']
    const double h = xi / n_steps;
    const auto deriv = [eps](double t, const double* s, double* d) {
        const double q = t * t - 2.0 * eps;
        d[0] = s[1];
        d[1] = q * s[0];
        d[2] = s[3];
        d[3] = q * s[2];
    };
    double k1[4], k2[4], k3[4], k4[4], tmp[4];
    double t = 0.0;
    for (int i = 0; i < n_steps; ++i) {
        deriv(t, y, k1);
        for (int j = 0; j < 4; ++j) tmp[j] = y[j] + 0.5 * h * k1[j];
        deriv(t + 0.5 * h, tmp, k2);
        for (int j = 0; j < 4; ++j) tmp[j] = y[j] + 0.5 * h * k2[j];
        deriv(t + 0.5 * h, tmp, k3);
        for (int j = 0; j < 4; ++j) tmp[j] = y[j] + h * k3[j];
        deriv(t + h, tmp, k4);
        for (int j = 0; j < 4; ++j)
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        t += h;
    }
    return {y[0], y[1], y[2], y[3]};
}

}  // namespace detail

// Fundamental solutions at xi (any sign) by RK4 + Richardson.
inline Fundamental fundamental_at(double eps, double xi) {
    const double a = std::fabs(xi);
    if (a == 0.0) return {1.0, 0.0, 0.0, 1.0};
    const int n = 2000 + static_cast<int>(400.0 * a * std::sqrt(1.0 + eps));
    const Fundamental coarse = detail::rk4_pair(eps, a, n);
    const Fundamental fine = detail::rk4_pair(eps, a, 2 * n);
    Fundamental r;
    r.even_value = fine.even_value + (fine.even_value - coarse.even_value) / 15.0;
    r.even_slope = fine.even_slope + (fine.even_slope - coarse.even_slope) / 15.0;
    r.odd_value = fine.odd_value + (fine.odd_value - coarse.odd_value) / 15.0;
    r.odd_slope = fine.odd_slope + (fine.odd_slope - coarse.odd_slope) / 15.0;
    if (xi < 0.0) {
        r.even_slope = -r.even_slope;
        r.odd_value = -r.odd_value;
    }
    return r;
}

}  // namespace oracle
