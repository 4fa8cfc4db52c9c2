#pragma once

#include <vector>

#include "bandvol/model.hpp"

namespace bandvol {

// Deep-well (tight-binding) prediction for the band grown out of harmonic
// level n: center e_n - j0, bandwidth 4*j1.
struct TightBindingBand {
    int n = 0;
    double e_n = 0.0;        // unperturbed level n + 1/2
    double j0 = 0.0;         // on-site shift J(0) >= 0
    double j1 = 0.0;         // |J(+1)|
    double j1_signed = 0.0;  // J(+1) with its sign, (-1)^n for this potential
    bool outside_regime = false;  // e_n above the barrier scale alpha^2
    double tail_bound = 0.0;      // truncation bound of the overlap quadrature

    double center() const { return e_n - j0; }
    double bandwidth() const { return 4.0 * j1; }
};

TightBindingBand tight_binding_band(const ModelParams& params, int n);

// Neighbor overlap J(s) of harmonic level n, units hbar*omega, by quadrature
// of psi_n(x - s d) [V(x) - U(x)] psi_n(x). Left neighbors (s < 0) are taken
// mirror-imaged, so J(-s) = (-1)^n J(s) for this even potential difference.
double overlap_j(const ModelParams& params, int n, int s);

// Fourier coefficient of the periodized cell potential, units hbar*omega.
// Real for this even potential; K(-s) equals K(s).
struct FourierCoefficient {
    int s = 0;
    double k_s = 0.0;
};

std::vector<FourierCoefficient> fourier_coefficients(const ModelParams& params,
                                                     int s_max);

// Cell-average of the potential (the s = 0 coefficient), alpha^2/6.
double mean_potential(const ModelParams& params);

struct FreeElectronEnergy {
    double eps0 = 0.0;  // kinetic + mean potential
    double eps2 = 0.0;  // second-order shift, truncated at s_max
    double tail = 0.0;  // estimated magnitude of the truncated tail
};

// Nearly-free-particle energy at extended-zone phase k_d = k*d. Throws
// std::domain_error within 1e-3 of a zone boundary (multiple of pi), where
// the non-degenerate series diverges; use gap_at_boundary there.
FreeElectronEnergy free_electron_correction(const ModelParams& params,
                                            double k_d, int s_max);

// Degenerate-perturbation gap at the s-th zone boundary: 2 |K(s)|.
double gap_at_boundary(const ModelParams& params, int s);

}  // namespace bandvol
