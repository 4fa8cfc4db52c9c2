#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bandvol::market {

struct Bar {
    std::string timestamp;    // ISO-8601 with offset, as parsed
    std::int64_t epoch_s = 0; // UTC seconds
    int year = 0, month = 0, day = 0;  // exchange-local calendar date
    double open = 0.0, high = 0.0, low = 0.0, close = 0.0;
    double volume = 0.0;

    bool operator==(const Bar&) const = default;
};

// Parses CSV with header `timestamp,open,high,low,close,volume`. Bars are
// validated (OHLC ordering, positivity) and sorted by time; a malformed row,
// header mismatch or duplicate timestamp throws std::runtime_error naming the
// row.
std::vector<Bar> parse_bars(std::istream& input);
std::vector<Bar> parse_bars(const std::string& text);

// Canonical CSV form of a bar series; parse(serialize(bars)) == bars and
// serialize is idempotent across the round trip.
std::string serialize_bars(const std::vector<Bar>& bars);

struct VolVolPoint {
    int window_id = 0;
    double sigma2 = 0.0;  // variance of log close within the window
    double volume = 0.0;  // summed volume
    bool limit_hit = false;
};

struct VolVolResult {
    std::vector<VolVolPoint> points;
    std::vector<std::string> warnings;
};

// Non-overlapping windows of `window` bars. limit_hit is set when any bar's
// close moved at least limit_fraction (minus 1e-6) from the previous daily
// close. window must be >= 2.
VolVolResult realized_volvol(const std::vector<Bar>& bars, int window,
                             double limit_fraction = 0.10);

struct ScanCluster {
    double volume_lo = 0.0;
    double volume_hi = 0.0;
    double corr = 0.0;  // Spearman within the cluster
    int n = 0;
};

struct ScanReport {
    double global_corr = 0.0;  // Spearman over all points
    std::vector<ScanCluster> clusters;
    bool band_like = false;
    int max_sigma2_volume_rank = 0;  // 1-based rank of the max-sigma2 point
    std::string status = "ok";       // "ok" or "inconclusive"

    std::string to_json() const;
};

// Rank-based scan for band signatures: positive global correlation with at
// least two volume clusters internally anti-correlated. Requires >= 10
// points; invariant under strictly monotone volume transforms.
ScanReport band_signature_scan(const std::vector<VolVolPoint>& points);

}  // namespace bandvol::market
