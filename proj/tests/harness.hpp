#pragma once
#include <algorithm>

// Test-harness machinery shared by the unit and acceptance suites:
//  - a zero-potential (free particle) cell solver to exercise the band
//    engine against closed forms,
//  - the H-basis boundary determinant, with the Hermite-equation solutions
//    integrated independently (RK4 on the Hermite ODE itself),
//  - composite trapezoid quadrature,
//  - an inverse-CDF sampler for synthetic market series.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "bandvol/cell_solution.hpp"
#include "bandvol/model.hpp"

namespace harness {

// Fundamental solutions with the in-cell potential replaced by zero:
// phi_e = cos(kappa xi), phi_o = sin(kappa xi)/kappa, kappa = sqrt(2 eps).
inline bandvol::CellSolver free_cell_solver(double domain_bound = 64.0) {
    return [domain_bound](double eps) {
        const double kappa = std::sqrt(std::max(2.0 * eps, 0.0));
        const auto even = [kappa](double xi) {
            return bandvol::ValueSlope{std::cos(kappa * xi),
                                       -kappa * std::sin(kappa * xi)};
        };
        const auto odd = [kappa](double xi) {
            if (kappa == 0.0) return bandvol::ValueSlope{xi, 1.0};
            return bandvol::ValueSlope{std::sin(kappa * xi) / kappa,
                                       std::cos(kappa * xi)};
        };
        return bandvol::make_cell_solution(eps, domain_bound, even, odd);
    };
}

namespace detail {

struct HermitePair {
    double h, hp;
};

// RK4 integration of the Hermite equation H'' = 2 xi H' - lambda H from 0 to
// xi (any sign), lambda = 2 eps - 1.
inline HermitePair hermite_ode(double eps, double xi, bool odd) {
    const double lambda = 2.0 * eps - 1.0;
    double y[2] = {odd ? 0.0 : 1.0, odd ? 1.0 : 0.0};
    const int n = 4000;
    const double h = xi / n;
    const auto deriv = [lambda](double t, const double* s, double* d) {
        d[0] = s[1];
        d[1] = 2.0 * t * s[1] - lambda * s[0];
    };
    double k1[2], k2[2], k3[2], k4[2], tmp[2];
    double t = 0.0;
    for (int i = 0; i < n; ++i) {
        deriv(t, y, k1);
        for (int j = 0; j < 2; ++j) tmp[j] = y[j] + 0.5 * h * k1[j];
        deriv(t + 0.5 * h, tmp, k2);
        for (int j = 0; j < 2; ++j) tmp[j] = y[j] + 0.5 * h * k2[j];
        deriv(t + 0.5 * h, tmp, k3);
        for (int j = 0; j < 2; ++j) tmp[j] = y[j] + h * k3[j];
        deriv(t + h, tmp, k4);
        for (int j = 0; j < 2; ++j)
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        t += h;
    }
    return {y[0], y[1]};
}

}  // namespace detail

// Residual of the literal H-basis boundary determinant at (eps, k d), scaled
// by the product of row norms. Vanishes exactly on the dispersion locus.
inline double hbasis_determinant_residual(const bandvol::ModelParams& params,
                                          double eps, double k_d) {
    using cplx = std::complex<double>;
    const double a = params.alpha;
    const double beta_d = 2.0 * a;
    const cplx z = std::exp(cplx(0.0, -k_d));

    const auto h1p = detail::hermite_ode(eps, a, false);
    const auto h1m = detail::hermite_ode(eps, -a, false);
    const auto h2p = detail::hermite_ode(eps, a, true);
    const auto h2m = detail::hermite_ode(eps, -a, true);

    const cplx r11 = h1m.h - z * h1p.h;
    const cplx r12 = h2m.h - z * h2p.h;
    const cplx r21 = h1m.hp - z * h1p.hp + beta_d * z * h1p.h;
    const cplx r22 = h2m.hp - z * h2p.hp + beta_d * z * h2p.h;

    const double row1 = std::sqrt(std::norm(r11) + std::norm(r12));
    const double row2 = std::sqrt(std::norm(r21) + std::norm(r22));
    const cplx det = r11 * r22 - r12 * r21;
    return std::abs(det) / std::max(row1 * row2, 1e-300);
}

// Composite trapezoid over [a, b] with n panels.
inline double trapezoid(const std::function<double(double)>& f, double a,
                        double b, int n) {
    const double h = (b - a) / n;
    double acc = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n; ++i) acc += f(a + i * h);
    return acc * h;
}

// Independent plane-wave route to the band energies: diagonalize the
// Fourier-basis Hamiltonian H_{mn} = delta_{mn} (theta + 2 pi m)^2/(8 a^2)
// + K(m - n) at Bloch phase theta, with a cyclic-Jacobi eigensolver. Returns
// the lowest `count` eigenvalues in ascending order.
inline std::vector<double> plane_wave_levels(const bandvol::ModelParams& p,
                                             double theta, int half_basis,
                                             int count) {
    const double a2 = p.alpha * p.alpha;
    const int n = 2 * half_basis + 1;
    std::vector<double> h(n * n, 0.0);
    const auto fourier = [a2](int j) {
        if (j == 0) return a2 / 6.0;
        const double sign = j % 2 == 0 ? 1.0 : -1.0;
        return sign * a2 / (M_PI * M_PI * j * j);
    };
    for (int i = 0; i < n; ++i) {
        const double q = theta + 2.0 * M_PI * (i - half_basis);
        h[i * n + i] = q * q / (8.0 * a2) + fourier(0);
        for (int j = 0; j < n; ++j)
            if (i != j) h[i * n + j] = fourier(i - j);
    }
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += h[i * n + j] * h[i * n + j];
        if (off < 1e-24) break;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double hij = h[i * n + j];
                if (std::fabs(hij) < 1e-15) continue;
                const double tau = (h[j * n + j] - h[i * n + i]) / (2.0 * hij);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(tau) +
                                  std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double hik = h[i * n + k];
                    const double hjk = h[j * n + k];
                    h[i * n + k] = c * hik - s * hjk;
                    h[j * n + k] = s * hik + c * hjk;
                }
                for (int k = 0; k < n; ++k) {
                    const double hki = h[k * n + i];
                    const double hkj = h[k * n + j];
                    h[k * n + i] = c * hki - s * hkj;
                    h[k * n + j] = s * hki + c * hkj;
                }
            }
    }
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = h[i * n + i];
    std::sort(diag.begin(), diag.end());
    diag.resize(count);
    return diag;
}

// Inverse-CDF sampler for a density on [-1/2, 1/2].
class DensitySampler {
  public:
    DensitySampler(const std::function<double(double)>& density,
                   unsigned seed, int grid = 4096)
        : rng_(seed), cdf_(grid + 1), xs_(grid + 1) {
        double acc = 0.0;
        double prev = density(-0.5);
        xs_[0] = -0.5;
        cdf_[0] = 0.0;
        for (int i = 1; i <= grid; ++i) {
            const double x = -0.5 + static_cast<double>(i) / grid;
            const double cur = density(x);
            acc += 0.5 * (prev + cur) / grid;
            xs_[i] = x;
            cdf_[i] = acc;
            prev = cur;
        }
        for (double& c : cdf_) c /= acc;
    }

    double sample() {
        const double u = uniform_(rng_);
        auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
        if (it == cdf_.begin()) return xs_.front();
        const std::size_t i = it - cdf_.begin();
        const double c0 = cdf_[i - 1], c1 = cdf_[i];
        const double w = c1 > c0 ? (u - c0) / (c1 - c0) : 0.0;
        return xs_[i - 1] + w * (xs_[i] - xs_[i - 1]);
    }

  private:
    std::mt19937 rng_;
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
    std::vector<double> cdf_, xs_;
};

}  // namespace harness
