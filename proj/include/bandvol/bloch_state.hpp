#pragma once

#include <complex>
#include <vector>

#include "bandvol/band_structure.hpp"
#include "bandvol/cell_solution.hpp"
#include "bandvol/model.hpp"

namespace bandvol {

// A normalized Bloch wavefunction for one (band, k) and its cell-local
// observables. The cell density integrates to 1 over x/d in [-1/2, 1/2].
class BlochState {
  public:
    int band_index() const { return band_index_; }
    double k_d() const { return k_d_; }
    double eps() const { return eps_; }
    std::complex<double> coeff_even() const { return coeff_even_; }
    std::complex<double> coeff_odd() const { return coeff_odd_; }

    // |phi(x)|^2 in units 1/d at x/d in [-1/2, 1/2].
    double density(double x_over_d) const;

    double sigma2() const { return sigma2_; }   // variance of x/d, units d^2
    double mean_x() const { return mean_x_; }   // mean of x/d, units d
    // Edge probability density times cell width: 1 for a uniform density.
    double p_limit() const { return p_limit_; }

    friend BlochState bloch_state(const ModelParams&, const Band&, double,
                                  const CellSolver&);

  private:
    BlochState() = default;
    int band_index_ = 0;
    double k_d_ = 0.0;
    double eps_ = 0.0;
    std::complex<double> coeff_even_;
    std::complex<double> coeff_odd_;
    double alpha_ = 0.0;
    double norm_ = 1.0;  // 1 / integral of the raw cell density
    double sigma2_ = 0.0;
    double mean_x_ = 0.0;
    double p_limit_ = 0.0;
    CellSolution cell_{solve_cell(0.0)};
};

BlochState bloch_state(const ModelParams& params, const Band& band, double k_d);
BlochState bloch_state(const ModelParams& params, const Band& band, double k_d,
                       const CellSolver& solver);

struct ObservablePoint {
    double eps = 0.0;
    double sigma2 = 0.0;
    double p_limit = 0.0;
    int band_index = 0;
    double k_d = 0.0;
};

// The (E, sigma_x^2) and (E, P_pl) scatter over all bands and an n_k-point
// k grid including both edges.
std::vector<ObservablePoint> observables_curve(const ModelParams& params,
                                               const std::vector<Band>& bands,
                                               int n_k);
std::vector<ObservablePoint> observables_curve(const ModelParams& params,
                                               const std::vector<Band>& bands,
                                               int n_k,
                                               const CellSolver& solver);
std::vector<ObservablePoint> volatility_curve(const ModelParams& params,
                                              const std::vector<Band>& bands,
                                              int n_k);
std::vector<ObservablePoint> limit_hit_curve(const ModelParams& params,
                                             const std::vector<Band>& bands,
                                             int n_k);

}  // namespace bandvol
