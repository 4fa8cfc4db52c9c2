#include "bandvol/band_structure.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "bandvol/numerics.hpp"

namespace bandvol {

namespace {

double trace_of(const ModelParams& params, double eps,
                const CellSolver& solver) {
    const EdgeValues e = solver(eps).at_edge(params.alpha);
    return e.even_value * e.odd_slope + e.even_slope * e.odd_value;
}

struct EdgeHit {
    double eps;
    double level;  // +1 or -1
};

// Lower-edge half-trace level of band n: D = +1 for even n, -1 for odd n
// (the scan enters band n from a gap where D has sign (-1)^n).
double lower_level(int n) { return n % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

DispersionSample half_trace(const ModelParams& params, double eps) {
    return half_trace(params, eps, harmonic_cell_solver());
}

DispersionSample half_trace(const ModelParams& params, double eps,
                            const CellSolver& solver) {
    return {eps, trace_of(params, eps, solver)};
}

std::vector<Band> find_bands(const ModelParams& params, double eps_max,
                             int n_max, const BandSearchOptions& opts) {
    return find_bands(params, eps_max, n_max, opts, harmonic_cell_solver());
}

std::vector<Band> find_bands(const ModelParams& params, double eps_max,
                             int n_max, const BandSearchOptions& opts,
                             const CellSolver& solver) {
    std::vector<Band> bands;
    if (eps_max <= 0.0 && n_max <= 0) return bands;

    const double alpha = params.alpha;
    const double a2 = alpha * alpha;
    const double ubar = a2 / 6.0;
    const auto dfun = [&](double e) { return trace_of(params, e, solver); };

    // Above the barrier scale the gaps shrink like 1/s^2 and can slip through
    // the base grid; refine the scan near the predicted zone boundaries
    // eps_s = (s pi)^2 / (8 alpha^2) + Ubar.
    const auto step_at = [&](double eps) {
        double step = opts.scan_step;
        if (eps > 0.5 * a2) {
            const double s_near =
                std::round(std::sqrt(std::max(eps - ubar, 0.0) * 8.0) * alpha /
                           M_PI);
            if (s_near >= 1.0) {
                const double eps_s =
                    (s_near * M_PI) * (s_near * M_PI) / (8.0 * a2) + ubar;
                const double gap = 2.0 * a2 / (M_PI * M_PI * s_near * s_near);
                if (gap < 4.0 * opts.scan_step &&
                    std::fabs(eps - eps_s) < std::max(10.0 * gap, 0.1)) {
                    step = std::clamp(gap / 10.0, 1e-7, opts.scan_step);
                }
            }
        }
        return step;
    };

    std::optional<EdgeHit> pending;
    double e0 = 1e-9;
    double d0 = dfun(e0);

    const auto record_edge = [&](const EdgeHit& hit) {
        if (!pending) {
            const double expect = lower_level(static_cast<int>(bands.size()));
            if (hit.level != expect)
                throw std::runtime_error(
                    "find_bands: inconsistent edge pattern near eps = " +
                    std::to_string(hit.eps));
            pending = hit;
            return;
        }
        Band b;
        b.index = static_cast<int>(bands.size());
        b.eps_lo = pending->eps;
        b.eps_hi = hit.eps;
        if (b.eps_hi < b.eps_lo) std::swap(b.eps_lo, b.eps_hi);
        if (b.width() < opts.narrow_width) b.narrow_unresolved = true;
        bands.push_back(b);
        pending.reset();
    };

    const double safety_cap = eps_max > 0.0 ? eps_max + 50.0 : 1e7;
    while (true) {
        if (n_max > 0 && static_cast<int>(bands.size()) >= n_max) break;
        const bool in_gap = !pending;
        if (eps_max > 0.0 && in_gap && e0 >= eps_max) break;
        if (e0 > safety_cap)
            throw std::runtime_error("find_bands: scan exceeded safety cap");

        const double e1 = e0 + step_at(e0);
        const double d1 = dfun(e1);

        EdgeHit hits[2];
        int n_hits = 0;
        for (const double level : {1.0, -1.0}) {
            if (d1 == level) {
                hits[n_hits++] = {e1, level};
            } else if ((d0 - level) * (d1 - level) < 0.0) {
                const double root = num::find_root(
                    [&](double e) { return dfun(e) - level; }, e0, e1,
                    opts.edge_tol);
                hits[n_hits++] = {root, level};
            }
        }
        if (n_hits == 2 && hits[1].eps < hits[0].eps)
            std::swap(hits[0], hits[1]);
        for (int i = 0; i < n_hits; ++i) record_edge(hits[i]);

        e0 = e1;
        d0 = d1;
    }

    if (eps_max > 0.0) {
        while (!bands.empty() && bands.back().eps_lo >= eps_max)
            bands.pop_back();
    }

    // Interior sanity: the half trace must sit inside [-1, 1] mid-band.
    for (const Band& b : bands) {
        if (b.width() < 4.0 * opts.edge_tol) continue;
        const double mid = dfun(b.midpoint());
        if (std::fabs(mid) > 1.0 + 1e-6)
            throw std::runtime_error(
                "find_bands: half trace leaves [-1, 1] inside band " +
                std::to_string(b.index));
    }
    return bands;
}

double dispersion_energy(const ModelParams& params, const Band& band,
                         double k_d, const CellSolver& solver) {
    if (!(k_d >= -1e-12 && k_d <= M_PI + 1e-12))
        throw std::invalid_argument("dispersion: k_d must lie in [0, pi]");
    if (!(band.eps_hi >= band.eps_lo))
        throw std::invalid_argument("dispersion: invalid band");
    k_d = std::clamp(k_d, 0.0, M_PI);

    const bool even = band.index % 2 == 0;
    if (band.width() < 2e-12) return band.midpoint();
    // snap to the zone endpoints, where cos(k d) = +/-1 meets the band edge
    // tangentially and a bracketed solve would be degenerate
    if (k_d < 1e-9) return even ? band.eps_lo : band.eps_hi;
    if (M_PI - k_d < 1e-9) return even ? band.eps_hi : band.eps_lo;

    const double target = std::cos(k_d);
    const auto g = [&](double e) {
        return trace_of(params, e, solver) - target;
    };
    const double g_lo = g(band.eps_lo);
    const double g_hi = g(band.eps_hi);
    if (g_lo == 0.0) return band.eps_lo;
    if (g_hi == 0.0) return band.eps_hi;
    if (g_lo * g_hi > 0.0)
        throw std::runtime_error(
            "dispersion: root not bracketed at k_d = " + std::to_string(k_d) +
            " in band " + std::to_string(band.index));
    return num::find_root(g, band.eps_lo, band.eps_hi, 1e-13);
}

std::vector<DispersionPoint> dispersion(const ModelParams& params,
                                        const Band& band, int n_k) {
    return dispersion(params, band, n_k, harmonic_cell_solver());
}

std::vector<DispersionPoint> dispersion(const ModelParams& params,
                                        const Band& band, int n_k,
                                        const CellSolver& solver) {
    if (n_k < 2) throw std::invalid_argument("dispersion: n_k must be >= 2");
    std::vector<DispersionPoint> points;
    points.reserve(n_k);
    for (int j = 0; j < n_k; ++j) {
        const double k_d =
            j == 0 ? 0.0
                   : (j == n_k - 1 ? M_PI : M_PI * j / (n_k - 1));
        points.push_back({k_d, dispersion_energy(params, band, k_d, solver)});
    }
    return points;
}

}  // namespace bandvol
