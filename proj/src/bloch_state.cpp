#include "bandvol/bloch_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bandvol/numerics.hpp"

namespace bandvol {

double BlochState::density(double x_over_d) const {
    const double xi = 2.0 * alpha_ * x_over_d;
    const double pe = cell_.even_at(xi).value;
    const double po = cell_.odd_at(xi).value;
    const double ca = std::norm(coeff_even_);
    const double cb = std::norm(coeff_odd_);
    const double cross =
        2.0 * (coeff_even_ * std::conj(coeff_odd_)).real() * pe * po;
    return norm_ * (ca * pe * pe + cb * po * po + cross);
}

BlochState bloch_state(const ModelParams& params, const Band& band,
                       double k_d) {
    return bloch_state(params, band, k_d, harmonic_cell_solver());
}

BlochState bloch_state(const ModelParams& params, const Band& band, double k_d,
                       const CellSolver& solver) {
    if (!(k_d >= -1e-12 && k_d <= M_PI + 1e-12))
        throw std::invalid_argument("bloch_state: k_d must lie in [0, pi]");
    k_d = std::clamp(k_d, 0.0, M_PI);

    BlochState st;
    st.band_index_ = band.index;
    st.k_d_ = k_d;
    const double eps_root = dispersion_energy(params, band, k_d, solver);
    st.eps_ = eps_root;
    st.alpha_ = params.alpha;
    st.cell_ = solver(st.eps_);

    const EdgeValues ev = st.cell_.at_edge(params.alpha);
    const double scale =
        std::max({std::fabs(ev.even_value), std::fabs(ev.even_slope),
                  std::fabs(ev.odd_value), std::fabs(ev.odd_slope)});

    // Null vector of the Bloch boundary system, in the gauge where the even
    // coefficient is real and the odd one imaginary:
    //   A = 2 phi_o(a) cos(k d / 2),  B = 2 i phi_e(a) sin(k d / 2).
    // At the high-symmetry endpoints one factor vanishes identically and the
    // surviving coefficient is pure edge-root noise, so the parity is chosen
    // there from the boundary condition that actually holds (periodic states
    // need phi_e' = 0 or phi_o = 0; anti-periodic ones phi_e = 0 or
    // phi_o' = 0).
    double a_re, b_im;
    const bool at_zero = k_d < 1e-9;
    const bool at_pi = M_PI - k_d < 1e-9;
    if (at_zero || at_pi) {
        const bool even_state =
            at_zero
                ? std::fabs(ev.even_slope) <= std::fabs(ev.odd_value)
                : std::fabs(ev.even_value) <= std::fabs(ev.odd_slope);
        a_re = even_state ? 1.0 : 0.0;
        b_im = even_state ? 0.0 : 1.0;
    } else {
        a_re = 2.0 * ev.odd_value * std::cos(0.5 * k_d);
        b_im = 2.0 * ev.even_value * std::sin(0.5 * k_d);
        if (std::fabs(a_re) + std::fabs(b_im) < 1e-14 * scale)
            throw std::runtime_error(
                "bloch_state: boundary null vector degenerate at k_d = " +
                std::to_string(k_d) + ", eps = " + std::to_string(eps_root) +
                " (|phi_e|, |phi_o| = " + std::to_string(ev.even_value) + ", " +
                std::to_string(ev.odd_value) + ")");
    }
    st.coeff_even_ = {a_re, 0.0};
    st.coeff_odd_ = {0.0, b_im};

    const double twice_alpha = 2.0 * params.alpha;
    const auto raw_density = [&](double s) {
        const double xi = twice_alpha * s;
        const double pe = st.cell_.even_at(xi).value;
        const double po = st.cell_.odd_at(xi).value;
        return a_re * a_re * pe * pe + b_im * b_im * po * po;
    };

    const auto moment = [&](int order, double tol_abs) {
        return num::integrate(
                   [&](double s) {
                       double w = 1.0;
                       for (int i = 0; i < order; ++i) w *= s;
                       return w * raw_density(s);
                   },
                   -0.5, 0.5, tol_abs, 1e-11)
            .value;
    };

    const double rough =
        num::integrate(raw_density, -0.5, 0.5, 1e300, 1e300, 0).value;
    const double tol_abs = std::max(std::fabs(rough), 1e-30) * 1e-12;

    const double total = moment(0, tol_abs);
    if (!(total > 0.0) || !std::isfinite(total))
        throw std::runtime_error(
            "bloch_state: normalization integral ill-conditioned (value " +
            std::to_string(total) + " at eps " + std::to_string(st.eps_) + ")");
    st.norm_ = 1.0 / total;

    const double m1 = moment(1, tol_abs) * st.norm_;
    const double m2 = moment(2, tol_abs) * st.norm_;
    st.mean_x_ = m1;
    st.sigma2_ = m2 - m1 * m1;
    st.p_limit_ = raw_density(0.5) * st.norm_;
    return st;
}

std::vector<ObservablePoint> observables_curve(const ModelParams& params,
                                               const std::vector<Band>& bands,
                                               int n_k) {
    return observables_curve(params, bands, n_k, harmonic_cell_solver());
}

std::vector<ObservablePoint> observables_curve(const ModelParams& params,
                                               const std::vector<Band>& bands,
                                               int n_k,
                                               const CellSolver& solver) {
    if (bands.empty())
        throw std::invalid_argument("observables_curve: no bands given");
    if (n_k < 2)
        throw std::invalid_argument("observables_curve: n_k must be >= 2");
    std::vector<ObservablePoint> out;
    out.reserve(bands.size() * n_k);
    for (const Band& band : bands) {
        for (int j = 0; j < n_k; ++j) {
            const double k_d =
                j == 0 ? 0.0
                       : (j == n_k - 1 ? M_PI : M_PI * j / (n_k - 1));
            const BlochState st = bloch_state(params, band, k_d, solver);
            out.push_back({st.eps(), st.sigma2(), st.p_limit(), band.index,
                           k_d});
        }
    }
    return out;
}

std::vector<ObservablePoint> volatility_curve(const ModelParams& params,
                                              const std::vector<Band>& bands,
                                              int n_k) {
    return observables_curve(params, bands, n_k);
}

std::vector<ObservablePoint> limit_hit_curve(const ModelParams& params,
                                             const std::vector<Band>& bands,
                                             int n_k) {
    return observables_curve(params, bands, n_k);
}

}  // namespace bandvol
