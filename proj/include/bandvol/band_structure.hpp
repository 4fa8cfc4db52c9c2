#pragma once

#include <vector>

#include "bandvol/cell_solution.hpp"
#include "bandvol/model.hpp"

namespace bandvol {

// Half the trace of the one-period monodromy matrix at energy eps. Equals
// cos(k d) on allowed bands; |half_trace| <= 1 iff eps lies in a band.
struct DispersionSample {
    double eps = 0.0;
    double half_trace = 0.0;
};

struct DispersionPoint {
    double k_d = 0.0;  // Bloch phase k*d in [0, pi]
    double eps = 0.0;  // units hbar*omega
};

struct Band {
    int index = 0;               // 0-based, increasing energy
    double eps_lo = 0.0;
    double eps_hi = 0.0;
    bool narrow_unresolved = false;  // width below edge resolution
    std::vector<DispersionPoint> samples;

    double width() const { return eps_hi - eps_lo; }
    double midpoint() const { return 0.5 * (eps_lo + eps_hi); }
};

struct BandSearchOptions {
    double scan_step = 0.01;     // base energy scan step, hbar*omega
    double edge_tol = 1e-13;     // band-edge root tolerance
    double narrow_width = 1e-12; // below this a band is flagged unresolved
};

DispersionSample half_trace(const ModelParams& params, double eps);
DispersionSample half_trace(const ModelParams& params, double eps,
                            const CellSolver& solver);

// Locates all bands with eps_lo < eps_max (eps_max > 0), or the first n_max
// bands (n_max > 0); both limits may be combined. Edges are bracketed on an
// adaptive scan grid and polished to edge_tol.
std::vector<Band> find_bands(const ModelParams& params, double eps_max,
                             int n_max = 0, const BandSearchOptions& opts = {});
std::vector<Band> find_bands(const ModelParams& params, double eps_max,
                             int n_max, const BandSearchOptions& opts,
                             const CellSolver& solver);

// Solves eps(k) on a uniform k*d grid over [0, pi] within one band.
// Throws std::runtime_error carrying the offending k if a root fails to
// bracket.
std::vector<DispersionPoint> dispersion(const ModelParams& params,
                                        const Band& band, int n_k);
std::vector<DispersionPoint> dispersion(const ModelParams& params,
                                        const Band& band, int n_k,
                                        const CellSolver& solver);

// Single-k dispersion solve within a band (k_d in [0, pi]).
double dispersion_energy(const ModelParams& params, const Band& band,
                         double k_d, const CellSolver& solver);

}  // namespace bandvol
