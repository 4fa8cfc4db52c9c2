#include "bandvol/market_data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "bandvol/stats.hpp"

namespace bandvol::market {

namespace {

constexpr const char* kHeader = "timestamp,open,high,low,close,volume";

[[noreturn]] void fail_row(std::size_t row, const std::string& why) {
    throw std::runtime_error("bar csv row " + std::to_string(row) + ": " + why);
}

// Days since 1970-01-01 for a civil date (proleptic Gregorian).
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2u) / 5u + d - 1u;
    const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (const char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

// ISO-8601 "YYYY-MM-DDTHH:MM:SS" with "Z" or "+HH:MM"/"-HH:MM" offset.
void parse_timestamp(const std::string& ts, std::size_t row, Bar& bar) {
    const auto expect = [&](bool ok) {
        if (!ok) fail_row(row, "bad timestamp '" + ts + "'");
    };
    expect(ts.size() >= 20);
    expect(ts[4] == '-' && ts[7] == '-' && ts[10] == 'T' && ts[13] == ':' &&
           ts[16] == ':');
    expect(all_digits(ts.substr(0, 4)) && all_digits(ts.substr(5, 2)) &&
           all_digits(ts.substr(8, 2)) && all_digits(ts.substr(11, 2)) &&
           all_digits(ts.substr(14, 2)) && all_digits(ts.substr(17, 2)));
    bar.year = std::stoi(ts.substr(0, 4));
    bar.month = std::stoi(ts.substr(5, 2));
    bar.day = std::stoi(ts.substr(8, 2));
    const int hh = std::stoi(ts.substr(11, 2));
    const int mm = std::stoi(ts.substr(14, 2));
    const int ss = std::stoi(ts.substr(17, 2));
    expect(bar.month >= 1 && bar.month <= 12 && bar.day >= 1 && bar.day <= 31);
    expect(hh < 24 && mm < 60 && ss < 61);

    int offset_s = 0;
    const std::string tz = ts.substr(19);
    if (tz == "Z") {
        offset_s = 0;
    } else {
        expect(tz.size() == 6 && (tz[0] == '+' || tz[0] == '-') &&
               tz[3] == ':' && all_digits(tz.substr(1, 2)) &&
               all_digits(tz.substr(4, 2)));
        offset_s = (std::stoi(tz.substr(1, 2)) * 60 + std::stoi(tz.substr(4, 2))) *
                   60 * (tz[0] == '-' ? -1 : 1);
    }
    bar.epoch_s = days_from_civil(bar.year, bar.month, bar.day) * 86400 +
                  hh * 3600 + mm * 60 + ss - offset_s;
    bar.timestamp = ts;
}

double parse_price(const std::string& field, std::size_t row,
                   const char* name) {
    const auto dot = field.find('.');
    const std::string whole = dot == std::string::npos ? field
                                                       : field.substr(0, dot);
    const std::string frac =
        dot == std::string::npos ? std::string() : field.substr(dot + 1);
    if (!all_digits(whole) || (dot != std::string::npos &&
                               (frac.empty() || frac.size() > 4 ||
                                !all_digits(frac))))
        fail_row(row, std::string(name) + " is not a decimal with up to 4 "
                                          "fraction digits: '" +
                          field + "'");
    return std::stod(field);
}

std::string format_price(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    std::string s = buf;
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return s;
}

}  // namespace

std::vector<Bar> parse_bars(std::istream& input) {
    std::string line;
    if (!std::getline(input, line) || line != kHeader)
        throw std::runtime_error("bar csv: header must be exactly '" +
                                 std::string(kHeader) + "'");
    std::vector<Bar> bars;
    std::size_t row = 1;
    while (std::getline(input, line)) {
        ++row;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 6)
            fail_row(row, "expected 6 fields, got " +
                              std::to_string(fields.size()));
        Bar bar;
        parse_timestamp(fields[0], row, bar);
        bar.open = parse_price(fields[1], row, "open");
        bar.high = parse_price(fields[2], row, "high");
        bar.low = parse_price(fields[3], row, "low");
        bar.close = parse_price(fields[4], row, "close");
        bar.volume = parse_price(fields[5], row, "volume");
        if (!(bar.open > 0.0 && bar.high > 0.0 && bar.low > 0.0 &&
              bar.close > 0.0))
            fail_row(row, "prices must be positive");
        if (bar.volume < 0.0) fail_row(row, "volume must be non-negative");
        if (!(bar.low <= std::min(bar.open, bar.close) &&
              std::max(bar.open, bar.close) <= bar.high))
            fail_row(row, "OHLC ordering violated (low <= open/close <= high)");
        bars.push_back(std::move(bar));
    }
    std::stable_sort(bars.begin(), bars.end(),
                     [](const Bar& a, const Bar& b) {
                         return a.epoch_s < b.epoch_s;
                     });
    for (std::size_t i = 1; i < bars.size(); ++i)
        if (bars[i].epoch_s == bars[i - 1].epoch_s)
            throw std::runtime_error("bar csv: duplicate timestamp '" +
                                     bars[i].timestamp + "'");
    return bars;
}

std::vector<Bar> parse_bars(const std::string& text) {
    std::istringstream in(text);
    return parse_bars(in);
}

std::string serialize_bars(const std::vector<Bar>& bars) {
    std::string out = kHeader;
    out += '\n';
    for (const Bar& b : bars) {
        out += b.timestamp;
        out += ',';
        out += format_price(b.open);
        out += ',';
        out += format_price(b.high);
        out += ',';
        out += format_price(b.low);
        out += ',';
        out += format_price(b.close);
        out += ',';
        out += format_price(b.volume);
        out += '\n';
    }
    return out;
}

VolVolResult realized_volvol(const std::vector<Bar>& bars, int window,
                             double limit_fraction) {
    if (window < 2)
        throw std::invalid_argument("realized_volvol: window must be >= 2");
    VolVolResult res;
    if (bars.size() < static_cast<std::size_t>(window)) {
        res.warnings.push_back("fewer bars (" + std::to_string(bars.size()) +
                               ") than one window (" + std::to_string(window) +
                               "); no points produced");
        return res;
    }

    // Daily closes in date order; the reference for limit detection is the
    // close of the latest day strictly before the bar's day (exchange rule).
    std::map<std::int64_t, double> daily_close;
    for (const Bar& b : bars)
        daily_close[days_from_civil(b.year, b.month, b.day)] = b.close;
    const auto prev_daily_close = [&](const Bar& b) -> const double* {
        const auto it =
            daily_close.lower_bound(days_from_civil(b.year, b.month, b.day));
        if (it == daily_close.begin()) return nullptr;
        return &std::prev(it)->second;
    };

    const std::size_t n_windows = bars.size() / window;
    for (std::size_t w = 0; w < n_windows; ++w) {
        VolVolPoint pt;
        pt.window_id = static_cast<int>(w);
        std::vector<double> log_closes;
        log_closes.reserve(window);
        for (std::size_t i = w * window; i < (w + 1) * window; ++i) {
            const Bar& b = bars[i];
            log_closes.push_back(std::log(b.close));
            pt.volume += b.volume;
            if (const double* ref = prev_daily_close(b)) {
                if (std::fabs(b.close / *ref - 1.0) >= limit_fraction - 1e-6)
                    pt.limit_hit = true;
            }
        }
        pt.sigma2 = stats::variance(log_closes);
        res.points.push_back(pt);
    }
    if (bars.size() % window != 0)
        res.warnings.push_back(
            "trailing " + std::to_string(bars.size() % window) +
            " bars did not fill a window and were ignored");
    return res;
}

namespace {

std::string json_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

std::string ScanReport::to_json() const {
    std::string out = "{\"band_like\":";
    out += band_like ? "true" : "false";
    out += ",\"clusters\":[";
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        if (i) out += ',';
        out += "{\"corr\":" + json_number(clusters[i].corr);
        out += ",\"n\":" + std::to_string(clusters[i].n);
        out += ",\"volume_hi\":" + json_number(clusters[i].volume_hi);
        out += ",\"volume_lo\":" + json_number(clusters[i].volume_lo);
        out += '}';
    }
    out += "],\"global_corr\":" + json_number(global_corr);
    out += ",\"max_sigma2_volume_rank\":" +
           std::to_string(max_sigma2_volume_rank);
    out += ",\"status\":\"" + status + "\"}";
    return out;
}

ScanReport band_signature_scan(const std::vector<VolVolPoint>& points) {
    if (points.size() < 10)
        throw std::invalid_argument(
            "band_signature_scan: need at least 10 points, got " +
            std::to_string(points.size()));

    const std::size_t n = points.size();
    std::vector<double> volumes(n), sigmas(n);
    for (std::size_t i = 0; i < n; ++i) {
        volumes[i] = points[i].volume;
        sigmas[i] = points[i].sigma2;
    }

    ScanReport rep;
    std::size_t max_i = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (sigmas[i] > sigmas[max_i]) max_i = i;

    const bool degenerate_volume =
        *std::max_element(volumes.begin(), volumes.end()) ==
        *std::min_element(volumes.begin(), volumes.end());
    if (degenerate_volume) {
        rep.status = "inconclusive";
        rep.max_sigma2_volume_rank = 1;
        return rep;
    }

    rep.global_corr = stats::spearman(volumes, sigmas);

    // Volume-ordered sequence of sigma2; cluster count chosen by a penalized
    // within-cluster variance (BIC-style), which depends only on the volume
    // ordering so the scan is invariant under monotone volume maps.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                     std::size_t b) {
        return volumes[a] < volumes[b];
    });
    std::vector<double> seq(n);
    for (std::size_t i = 0; i < n; ++i) seq[i] = sigmas[order[i]];

    const std::size_t min_len = 3;
    const int k_max = static_cast<int>(std::min<std::size_t>(8, n / min_len));
    double best_score = 0.0;
    std::vector<std::size_t> best_starts = {0};
    for (int k = 1; k <= k_max; ++k) {
        const auto starts = stats::segment_sequence(seq, k, min_len);
        const double sse = stats::segmentation_cost(seq, starts);
        const double score =
            n * std::log(std::max(sse, 1e-300) / n) +
            2.0 * k * std::log(static_cast<double>(n));
        if (k == 1 || score < best_score) {
            best_score = score;
            best_starts = starts;
        }
    }

    int negative_clusters = 0;
    for (std::size_t c = 0; c < best_starts.size(); ++c) {
        const std::size_t a = best_starts[c];
        const std::size_t b =
            c + 1 < best_starts.size() ? best_starts[c + 1] : n;
        ScanCluster cl;
        cl.n = static_cast<int>(b - a);
        std::vector<double> v(b - a), s(b - a);
        for (std::size_t i = a; i < b; ++i) {
            v[i - a] = volumes[order[i]];
            s[i - a] = sigmas[order[i]];
        }
        cl.volume_lo = v.front();
        cl.volume_hi = v.back();
        cl.corr = stats::spearman(v, s);
        if (cl.corr < 0.0) ++negative_clusters;
        rep.clusters.push_back(cl);
    }

    rep.band_like = rep.global_corr > 0.0 && negative_clusters >= 2;

    // 1-based volume rank of the max-sigma2 point; band-structured data puts
    // the sigma2 maximum away from the maximal volume.
    const std::vector<double> vranks = stats::ranks(volumes);
    rep.max_sigma2_volume_rank =
        static_cast<int>(std::lround(vranks[max_i]));
    return rep;
}

}  // namespace bandvol::market
