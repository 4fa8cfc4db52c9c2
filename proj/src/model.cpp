#include "bandvol/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bandvol {

ModelParams make_params(double limit_fraction, double alpha) {
    if (!(limit_fraction > 0.0) || !(limit_fraction < 1.0)) {
        throw std::invalid_argument(
            "limit_fraction must be in (0, 1), got " +
            std::to_string(limit_fraction));
    }
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("alpha must be positive and finite, got " +
                                    std::to_string(alpha));
    }
    ModelParams p;
    p.alpha = alpha;
    p.limit_fraction = limit_fraction;
    p.d_log = std::log((1.0 + limit_fraction) / (1.0 - limit_fraction));
    return p;
}

double barrier_top(const ModelParams& params) {
    return params.alpha * params.alpha;
}

}  // namespace bandvol
