#pragma once

namespace bandvol {

// Dimensionless problem definition. All lengths are reported in units of the
// cell width d, all energies in units of the level spacing (hbar*omega).
// alpha = (d/2) * sqrt(m*omega/hbar) is the cell half-width in oscillator
// units and is the only parameter the solver needs; d_log keeps the physical
// cell width in log-price units for reporting.
struct ModelParams {
    double alpha = 0.0;           // cell half-width, oscillator units
    double limit_fraction = 0.0;  // daily price-limit fraction L
    double d_log = 0.0;           // ln((1+L)/(1-L)), log-return units
};

// Validates inputs and derives d_log. Throws std::invalid_argument naming
// the offending field.
ModelParams make_params(double limit_fraction, double alpha);

// Energy of the cell-edge barrier scale in units hbar*omega: eps_top = alpha^2.
double barrier_top(const ModelParams& params);

}  // namespace bandvol
