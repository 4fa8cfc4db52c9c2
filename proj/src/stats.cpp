#include "bandvol/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace bandvol::stats {

double mean(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    return std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
}

double variance(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    const double m = mean(xs);
    double acc = 0.0;
    for (const double x : xs) acc += (x - m) * (x - m);
    return acc / xs.size();
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("pearson: size mismatch");
    if (xs.size() < 2) return 0.0;
    const double mx = mean(xs), my = mean(ys);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

std::vector<double> ranks(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> r(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
        const double avg = 0.5 * (i + j) + 1.0;  // 1-based average rank
        for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
        i = j + 1;
    }
    return r;
}

double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
    return pearson(ranks(xs), ranks(ys));
}

double loglog_slope(const std::vector<double>& xs,
                    const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("loglog_slope: need >= 2 paired points");
    std::vector<double> lx, ly;
    lx.reserve(xs.size());
    ly.reserve(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw std::invalid_argument("loglog_slope: inputs must be positive");
        lx.push_back(std::log(xs[i]));
        ly.push_back(std::log(ys[i]));
    }
    const double mx = mean(lx), my = mean(ly);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    if (sxx <= 0.0) throw std::invalid_argument("loglog_slope: degenerate x");
    return sxy / sxx;
}

namespace {

// Prefix sums for O(1) segment SSE queries.
struct PrefixSse {
    std::vector<double> sum, sum2;
    explicit PrefixSse(const std::vector<double>& v)
        : sum(v.size() + 1, 0.0), sum2(v.size() + 1, 0.0) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            sum[i + 1] = sum[i] + v[i];
            sum2[i + 1] = sum2[i] + v[i] * v[i];
        }
    }
    // SSE of v[a..b) about its mean
    double operator()(std::size_t a, std::size_t b) const {
        const double n = static_cast<double>(b - a);
        const double s = sum[b] - sum[a];
        return std::max(0.0, (sum2[b] - sum2[a]) - s * s / n);
    }
};

}  // namespace

std::vector<std::size_t> segment_sequence(const std::vector<double>& values,
                                          int k, std::size_t min_len) {
    const std::size_t n = values.size();
    if (k < 1 || static_cast<std::size_t>(k) * min_len > n)
        throw std::invalid_argument("segment_sequence: infeasible k/min_len");
    const PrefixSse sse(values);
    const double inf = std::numeric_limits<double>::infinity();

    // dp[c][i]: best cost of splitting values[0..i) into c segments
    std::vector<std::vector<double>> dp(k + 1,
                                        std::vector<double>(n + 1, inf));
    std::vector<std::vector<std::size_t>> cut(
        k + 1, std::vector<std::size_t>(n + 1, 0));
    dp[0][0] = 0.0;
    for (int c = 1; c <= k; ++c) {
        for (std::size_t i = c * min_len; i <= n; ++i) {
            for (std::size_t j = (c - 1) * min_len; j + min_len <= i; ++j) {
                if (dp[c - 1][j] == inf) continue;
                const double cost = dp[c - 1][j] + sse(j, i);
                if (cost < dp[c][i]) {
                    dp[c][i] = cost;
                    cut[c][i] = j;
                }
            }
        }
    }

    std::vector<std::size_t> starts(k);
    std::size_t pos = n;
    for (int c = k; c >= 1; --c) {
        starts[c - 1] = cut[c][pos];
        pos = cut[c][pos];
    }
    return starts;
}

double segmentation_cost(const std::vector<double>& values,
                         const std::vector<std::size_t>& starts) {
    const PrefixSse sse(values);
    double cost = 0.0;
    for (std::size_t i = 0; i < starts.size(); ++i) {
        const std::size_t a = starts[i];
        const std::size_t b =
            i + 1 < starts.size() ? starts[i + 1] : values.size();
        cost += sse(a, b);
    }
    return cost;
}

}  // namespace bandvol::stats
