#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "bandvol/band_structure.hpp"
#include "bandvol/model.hpp"
#include "harness.hpp"
#include "bandvol/stats.hpp"

using namespace bandvol;

TEST_CASE("zero-potential harness: half trace equals cos(kappa d)") {
    const ModelParams p = make_params(0.10, 2.55);
    const CellSolver free_solver = harness::free_cell_solver();
    std::mt19937 rng(7531);
    std::uniform_real_distribution<double> eps_dist(0.01, 20.0);
    for (int i = 0; i < 50; ++i) {
        const double eps = eps_dist(rng);
        const double kappa_d = std::sqrt(2.0 * eps) * 2.0 * p.alpha;
        const DispersionSample s = half_trace(p, eps, free_solver);
        CHECK(std::fabs(s.half_trace - std::cos(kappa_d)) < 1e-8);
    }
}

TEST_CASE("dense scan pins the lowest band to a narrow window around 0.5") {
    const ModelParams p = make_params(0.10, 2.55);
    // Dense eps scan between the two lowest harmonic levels: the only allowed
    // energies must form one narrow interval containing 0.5.
    double lo = 2.0, hi = -1.0;
    for (int i = 0; i <= 1000; ++i) {
        const double eps = 0.3 + i * 1e-3;
        if (std::fabs(half_trace(p, eps).half_trace) <= 1.0) {
            lo = std::min(lo, eps);
            hi = std::max(hi, eps);
        }
    }
    CHECK(lo > 0.45);
    CHECK(hi < 0.55);
    CHECK(lo < 0.5001);
    CHECK(hi > 0.5001);

    // The examples follow from the scan: just above the ground level lies
    // inside the band, eps = 1.0 sits in the first gap.
    CHECK(std::fabs(half_trace(p, 0.5001).half_trace) <= 1.0);
    CHECK(std::fabs(half_trace(p, 1.0).half_trace) > 1.0);
}

TEST_CASE("deep bands sit at the harmonic levels and are narrow") {
    const ModelParams p = make_params(0.10, 2.55);
    const auto bands = find_bands(p, 2.0);
    REQUIRE(bands.size() >= 2);
    CHECK(std::fabs(bands[0].midpoint() - 0.5) < 0.01);
    CHECK(std::fabs(bands[1].midpoint() - 1.5) < 0.03);
    CHECK(bands[0].width() < 1e-2);
    // Frozen from the dense scan; 4|J(1)| for level 1 independently gives
    // 2 alpha (alpha^2 - 1) * 4 / sqrt(pi) * exp(-alpha^2) = 0.0952.
    CHECK(bands[1].width() == doctest::Approx(0.0958).epsilon(0.02));
}

TEST_CASE("find_bands with no limits returns nothing") {
    const ModelParams p = make_params(0.10, 2.55);
    CHECK(find_bands(p, 0.0).empty());
}

TEST_CASE("band count below the barrier scale grows like alpha^2") {
    // Semiclassical count of states below the barrier top: the cell phase
    // space gives (1/pi) * integral sqrt(2 alpha^2 - xi^2) dxi over the cell
    // = alpha^2 (1/2 + 1/pi).
    int counts[3] = {0, 0, 0};
    const double alphas[3] = {1.5, 2.55, 3.5};
    for (int i = 0; i < 3; ++i) {
        const ModelParams p = make_params(0.10, alphas[i]);
        const double top = barrier_top(p);
        const auto bands = find_bands(p, top + 2.0);
        for (const Band& b : bands)
            if (b.eps_hi < top) ++counts[i];
        const double semiclassical = top * (0.5 + 1.0 / M_PI);
        CAPTURE(alphas[i]);
        CHECK(std::abs(counts[i] - static_cast<int>(std::lround(
                                       semiclassical))) <= 1);
    }
    // quadratic growth (compared where counts are large enough for the
    // integer granularity not to dominate)
    CHECK(counts[2] > counts[1]);
    CHECK(counts[1] > counts[0]);
    CHECK(static_cast<double>(counts[2]) / counts[1] ==
          doctest::Approx((alphas[2] * alphas[2]) / (alphas[1] * alphas[1]))
              .epsilon(0.2));
}

TEST_CASE("band edges carry |D| = 1 and interiors stay inside") {
    const ModelParams p = make_params(0.10, 2.55);
    const auto bands = find_bands(p, 12.0);
    REQUIRE(!bands.empty());
    for (const Band& b : bands) {
        CHECK(std::fabs(std::fabs(half_trace(p, b.eps_lo).half_trace) - 1.0) <
              1e-6);
        CHECK(std::fabs(std::fabs(half_trace(p, b.eps_hi).half_trace) - 1.0) <
              1e-6);
        if (!b.narrow_unresolved)
            CHECK(std::fabs(half_trace(p, b.midpoint()).half_trace) <= 1.0);
    }
    for (std::size_t i = 1; i < bands.size(); ++i) {
        CHECK(bands[i - 1].eps_hi < bands[i].eps_lo);
        CHECK(bands[i].index == static_cast<int>(i));
    }
}

TEST_CASE("dispersion endpoints land on the band edges with alternating parity") {
    const ModelParams p = make_params(0.10, 2.55);
    const auto bands = find_bands(p, 0.0, 4);
    REQUIRE(bands.size() == 4);
    for (const Band& b : bands) {
        const auto pts = dispersion(p, b, 9);
        REQUIRE(pts.size() == 9);
        const bool even = b.index % 2 == 0;
        CHECK(pts.front().k_d == doctest::Approx(0.0));
        CHECK(pts.back().k_d == doctest::Approx(M_PI));
        CHECK(pts.front().eps ==
              doctest::Approx(even ? b.eps_lo : b.eps_hi).epsilon(1e-12));
        CHECK(pts.back().eps ==
              doctest::Approx(even ? b.eps_hi : b.eps_lo).epsilon(1e-12));
        // strictly monotone in k within the band
        for (std::size_t i = 1; i < pts.size(); ++i) {
            if (b.narrow_unresolved) break;
            if (even)
                CHECK(pts[i].eps > pts[i - 1].eps);
            else
                CHECK(pts[i].eps < pts[i - 1].eps);
        }
        // the lowest band is essentially flat
        if (b.index == 0)
            CHECK(std::fabs(pts.back().eps - pts.front().eps) <=
                  b.width() + 1e-12);
    }
}

TEST_CASE("zero-potential harness: dispersion reproduces the folded parabola") {
    const ModelParams p = make_params(0.10, 2.55);
    const CellSolver free_solver = harness::free_cell_solver();
    const double a2 = p.alpha * p.alpha;
    // In the harness the band-m edges are at eps = (m pi)^2 / (8 alpha^2).
    for (const int m : {1, 2, 5, 8}) {
        Band band;
        band.index = m;
        band.eps_lo = (m * M_PI) * (m * M_PI) / (8.0 * a2);
        band.eps_hi = ((m + 1) * M_PI) * ((m + 1) * M_PI) / (8.0 * a2);
        const auto pts = dispersion(p, band, 17, free_solver);
        for (const auto& pt : pts) {
            const double q_d = m % 2 == 0 ? m * M_PI + pt.k_d
                                          : (m + 1) * M_PI - pt.k_d;
            const double expected = q_d * q_d / (8.0 * a2);
            CHECK(pt.eps == doctest::Approx(expected).epsilon(1e-6));
        }
    }
}

TEST_CASE("H-basis boundary determinant vanishes on the same dispersion locus") {
    const ModelParams p = make_params(0.10, 2.55);
    const auto bands = find_bands(p, 18.0);
    REQUIRE(bands.size() >= 5);
    std::mt19937 rng(99173);
    std::uniform_int_distribution<std::size_t> band_pick(0, bands.size() - 1);
    std::uniform_real_distribution<double> theta_dist(0.05, M_PI - 0.05);
    for (int i = 0; i < 100; ++i) {
        const Band& band = bands[band_pick(rng)];
        if (band.width() < 1e-9) continue;
        const double theta = theta_dist(rng);
        const double eps =
            dispersion_energy(p, band, theta, harmonic_cell_solver());
        const double on_locus =
            harness::hbasis_determinant_residual(p, eps, theta);
        CHECK(on_locus < 1e-6);
        // off the locus the determinant must be visibly nonzero
        const double theta_off =
            theta > M_PI_2 ? theta - 1.0 : theta + 1.0;
        const double off_locus =
            harness::hbasis_determinant_residual(p, eps, theta_off);
        CHECK(off_locus > 1e-3);
    }
}

TEST_CASE("a bandwidth below resolution is flagged, not failed") {
    const ModelParams p = make_params(0.10, 6.0);
    const auto bands = find_bands(p, 0.0, 1);
    REQUIRE(bands.size() == 1);
    CHECK(bands[0].narrow_unresolved);
    CHECK(std::fabs(bands[0].midpoint() - 0.5) < 1e-3);
    // dispersion degenerates to the midpoint
    const auto pts = dispersion(p, bands[0], 5);
    for (const auto& pt : pts)
        CHECK(pt.eps == doctest::Approx(bands[0].midpoint()));
}

TEST_CASE("dispersion argument validation") {
    const ModelParams p = make_params(0.10, 2.55);
    const auto bands = find_bands(p, 0.0, 1);
    REQUIRE(!bands.empty());
    CHECK_THROWS_AS(dispersion(p, bands[0], 1), std::invalid_argument);
    CHECK_THROWS_AS(
        dispersion_energy(p, bands[0], 3.5, harmonic_cell_solver()),
        std::invalid_argument);
}

TEST_CASE("cumulative state count scales linearly below and as sqrt above") {
    const ModelParams p = make_params(0.10, 2.55);
    const double top = barrier_top(p);
    const auto bands = find_bands(p, 10.0 * top);
    REQUIRE(bands.size() >= 10);

    // A band contributes half of its k states at its energy midpoint, so the
    // cumulative count at midpoint n is n + 1/2.
    std::vector<double> eps_low, n_low, eps_high, n_high;
    for (const Band& b : bands) {
        const double count = b.index + 0.5;
        if (b.midpoint() < 0.3 * top) {
            eps_low.push_back(b.midpoint());
            n_low.push_back(count);
        }
        if (b.midpoint() > 4.0 * top) {
            eps_high.push_back(b.midpoint());
            n_high.push_back(count);
        }
    }
    REQUIRE(eps_low.size() >= 2);
    REQUIRE(eps_high.size() >= 3);
    const double slope_low = bandvol::stats::loglog_slope(eps_low, n_low);
    const double slope_high = bandvol::stats::loglog_slope(eps_high, n_high);
    CHECK(std::fabs(slope_low - 1.0) < 0.15);
    CHECK(std::fabs(slope_high - 0.5) < 0.15);
}

TEST_CASE("plane-wave diagonalization confirms the band edges") {
    // Fully independent route: the Fourier-basis Hamiltonian at the two
    // high-symmetry Bloch phases reproduces the monodromy band edges.
    const ModelParams p = make_params(0.10, 2.55);
    const auto bands = find_bands(p, 35.0);
    REQUIRE(bands.size() >= 13);
    const auto at_zero = harness::plane_wave_levels(p, 0.0, 40, 14);
    const auto at_pi = harness::plane_wave_levels(p, M_PI, 40, 14);
    for (const Band& b : bands) {
        const bool even = b.index % 2 == 0;
        const double lo = even ? at_zero[b.index] : at_pi[b.index];
        const double hi = even ? at_pi[b.index] : at_zero[b.index];
        CAPTURE(b.index);
        CHECK(b.eps_lo == doctest::Approx(lo).epsilon(1e-7));
        CHECK(b.eps_hi == doctest::Approx(hi).epsilon(1e-7));
    }
}

TEST_CASE("both band limits may be combined; the tighter one wins") {
    const ModelParams p = make_params(0.10, 2.55);
    CHECK(find_bands(p, 2.0, 1000).size() == find_bands(p, 2.0).size());
    CHECK(find_bands(p, 50.0, 2).size() == 2);
}
