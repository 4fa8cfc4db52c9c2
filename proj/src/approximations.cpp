#include "bandvol/approximations.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bandvol/numerics.hpp"

namespace bandvol {

namespace {

// V(x) - U(x) in units hbar*omega: zero on the home cell, 2 alpha l (xi -
// alpha l) on cell l (cells are [(2l-1) alpha, (2l+1) alpha) in xi).
double v_minus_u(double xi, double alpha) {
    const double l = std::floor(xi / (2.0 * alpha) + 0.5);
    return 2.0 * alpha * l * (xi - alpha * l);
}

// Literal overlap integral of psi_n shifted by s cells against V - U,
// integrated cell by cell over |x| <= (|s| + 6) d.
double literal_overlap(const ModelParams& params, int n, int s, double* tail) {
    const double alpha = params.alpha;
    const double shift = 2.0 * alpha * s;
    const int reach = std::abs(s) + 6;
    const double r_max = 2.0 * alpha * reach;

    double total = 0.0;
    double last = 0.0, prev = 0.0;
    for (int l = -reach; l <= reach; ++l) {
        if (l == 0) continue;  // V - U vanishes on the home cell
        const double lo = std::max((2.0 * l - 1.0) * alpha, -r_max);
        const double hi = std::min((2.0 * l + 1.0) * alpha, r_max);
        if (hi <= lo) continue;
        const double piece =
            num::integrate(
                [&](double xi) {
                    return num::hermite_function(n, xi - shift) *
                           v_minus_u(xi, alpha) *
                           num::hermite_function(n, xi);
                },
                lo, hi, 1e-18, 1e-12)
                .value;
        total += piece;
        if (std::abs(l) == reach) last += std::fabs(piece);
        if (std::abs(l) == reach - 1) prev += std::fabs(piece);
    }
    if (tail) {
        const double ratio =
            prev > 0.0 ? std::min(last / prev, 0.9) : 0.0;
        *tail = last * ratio / (1.0 - ratio);
    }
    return total;
}

double fourier_coefficient(const ModelParams& params, int s) {
    const double a2 = params.alpha * params.alpha;
    if (s == 0) {
        return num::integrate([a2](double t) { return 2.0 * a2 * t * t; },
                              -0.5, 0.5, 1e-14, 1e-13)
            .value;
    }
    // Imaginary part vanishes by symmetry; only the cosine transform remains.
    return num::integrate(
               [a2, s](double t) {
                   return 2.0 * a2 * t * t * std::cos(2.0 * M_PI * s * t);
               },
               -0.5, 0.5, 1e-14, 1e-13)
        .value;
}

}  // namespace

double overlap_j(const ModelParams& params, int n, int s) {
    if (n < 0) throw std::invalid_argument("overlap_j: n must be >= 0");
    double j = literal_overlap(params, n, s, nullptr);
    // Left neighbors taken mirror-imaged: J(-s) carries the orbital parity.
    if (s < 0 && n % 2 == 1) j = -j;
    return j;
}

TightBindingBand tight_binding_band(const ModelParams& params, int n) {
    if (n < 0)
        throw std::invalid_argument("tight_binding_band: n must be >= 0");
    TightBindingBand tb;
    tb.n = n;
    tb.e_n = n + 0.5;
    tb.outside_regime = tb.e_n > params.alpha * params.alpha;

    double tail0 = 0.0, tail1 = 0.0;
    const double j0 = literal_overlap(params, n, 0, &tail0);
    const double j1 = literal_overlap(params, n, 1, &tail1);
    tb.j0 = std::fabs(j0);
    tb.j1 = std::fabs(j1);
    tb.j1_signed = j1;
    tb.tail_bound = tail0 + tail1;
    return tb;
}

std::vector<FourierCoefficient> fourier_coefficients(const ModelParams& params,
                                                     int s_max) {
    if (s_max < 1)
        throw std::invalid_argument("fourier_coefficients: s_max must be >= 1");
    std::vector<FourierCoefficient> out;
    out.reserve(s_max);
    for (int s = 1; s <= s_max; ++s)
        out.push_back({s, fourier_coefficient(params, s)});
    return out;
}

double mean_potential(const ModelParams& params) {
    return fourier_coefficient(params, 0);
}

FreeElectronEnergy free_electron_correction(const ModelParams& params,
                                            double k_d, int s_max) {
    if (s_max < 1)
        throw std::invalid_argument(
            "free_electron_correction: s_max must be >= 1");
    const double m_near = std::round(k_d / M_PI);
    if (m_near != 0.0 && std::fabs(k_d - m_near * M_PI) < 1e-3)
        throw std::domain_error(
            "free_electron_correction: k_d = " + std::to_string(k_d) +
            " is within 1e-3 of a zone boundary; the non-degenerate series "
            "diverges there, use gap_at_boundary instead");

    const double a2 = params.alpha * params.alpha;
    const std::vector<FourierCoefficient> ks =
        fourier_coefficients(params, s_max);

    FreeElectronEnergy fe;
    fe.eps0 = k_d * k_d / (8.0 * a2) + mean_potential(params);

    double last_mag = 0.0;
    for (int s = 1; s <= s_max; ++s) {
        const double ks2 = ks[s - 1].k_s * ks[s - 1].k_s;
        const double g_plus = 2.0 * M_PI * s * (2.0 * k_d + 2.0 * M_PI * s);
        const double g_minus = 2.0 * M_PI * s * (2.0 * k_d - 2.0 * M_PI * s);
        const double term =
            8.0 * a2 * ks2 * (-1.0 / g_plus + 1.0 / g_minus);
        fe.eps2 += term;
        if (s == s_max) last_mag = std::fabs(term);
    }
    // sum of |k_s|^2 / denominators decays like 1/s^6, so the truncated tail
    // is about the last term times s_max/5
    fe.tail = last_mag * s_max / 5.0;
    return fe;
}

double gap_at_boundary(const ModelParams& params, int s) {
    if (s < 1) throw std::invalid_argument("gap_at_boundary: s must be >= 1");
    return 2.0 * std::fabs(fourier_coefficient(params, s));
}

}  // namespace bandvol
