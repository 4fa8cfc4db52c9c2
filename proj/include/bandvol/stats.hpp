#pragma once

#include <cstddef>
#include <vector>

namespace bandvol::stats {

double mean(const std::vector<double>& xs);

// Population variance (divide by n).
double variance(const std::vector<double>& xs);

// Pearson correlation; 0 when either side has zero variance.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

// Ranks with average ties, 1-based.
std::vector<double> ranks(const std::vector<double>& xs);

// Spearman rank correlation; 0 when either side has zero variance.
double spearman(const std::vector<double>& xs, const std::vector<double>& ys);

// Least-squares slope of log(y) against log(x); inputs must be positive.
double loglog_slope(const std::vector<double>& xs,
                    const std::vector<double>& ys);

// Optimal partition of a sequence into k contiguous segments minimizing the
// within-segment sum of squared deviations from segment means, with a minimum
// segment length. Returns segment start indices (first is always 0).
std::vector<std::size_t> segment_sequence(const std::vector<double>& values,
                                          int k, std::size_t min_len);

// Within-segment SSE of a given segmentation.
double segmentation_cost(const std::vector<double>& values,
                         const std::vector<std::size_t>& starts);

}  // namespace bandvol::stats
