// Command-line front end: band tables, dispersion curves, per-state
// observables, analytic-limit comparisons and market-data scans, emitted as
// plot-ready CSV or JSON.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bandvol/approximations.hpp"
#include "bandvol/band_structure.hpp"
#include "bandvol/bloch_state.hpp"
#include "bandvol/market_data.hpp"
#include "bandvol/model.hpp"

namespace {

using namespace bandvol;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// A column-oriented table with unit-carrying headers, rendered as CSV or as
// an array of JSON objects (keys keep the name left of the unit bracket).
struct Table {
    std::vector<std::string> headers;  // e.g. "eps[hbar_omega]"
    std::vector<std::vector<std::string>> rows;

    std::string csv() const {
        std::string out;
        for (std::size_t c = 0; c < headers.size(); ++c) {
            if (c) out += ',';
            out += headers[c];
        }
        out += '\n';
        for (const auto& r : rows) {
            for (std::size_t c = 0; c < r.size(); ++c) {
                if (c) out += ',';
                out += r[c];
            }
            out += '\n';
        }
        return out;
    }

    std::string json() const {
        std::vector<std::string> keys;
        for (const std::string& h : headers)
            keys.push_back(h.substr(0, h.find('[')));
        std::string out = "[";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i) out += ',';
            out += '{';
            for (std::size_t c = 0; c < keys.size(); ++c) {
                if (c) out += ',';
                out += '"' + keys[c] + "\":" +
                       (rows[i][c].empty() ? "null" : rows[i][c]);
            }
            out += '}';
        }
        out += "]\n";
        return out;
    }
};

struct CommonOptions {
    double alpha = 2.55;  // roughly six bands below the barrier top
    double limit_fraction = 0.10;
    double eps_max = 0.0;
    int n_bands = 0;
    int n_k = 64;
    int s_max = 50;
    double scan_step = 0.01;
    std::string output;
    std::string format = "csv";
};

void add_model_flags(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--alpha", o.alpha,
                    "Cell half-width in oscillator units (> 0)");
    cmd->add_option("--limit-fraction", o.limit_fraction,
                    "Daily price-limit fraction L in (0, 1)");
    cmd->add_option("--eps-max", o.eps_max,
                    "Keep bands starting below this energy (hbar*omega)");
    cmd->add_option("--n-bands", o.n_bands, "Number of bands to compute");
    cmd->add_option("--scan-step", o.scan_step,
                    "Base energy scan step for the band search");
    cmd->add_option("--output", o.output,
                    "Output file (default stdout; relative paths resolve "
                    "against $BANDVOL_OUTPUT_DIR when set)");
    cmd->add_option("--format", o.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

std::vector<Band> bands_for(const CommonOptions& o, const ModelParams& p) {
    double eps_max = o.eps_max;
    int n_bands = o.n_bands;
    if (eps_max <= 0.0 && n_bands <= 0) n_bands = 8;
    BandSearchOptions search;
    search.scan_step = o.scan_step;
    return find_bands(p, eps_max, n_bands, search);
}

void write_output(const CommonOptions& o, const std::string& text) {
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::string path = o.output;
    const char* dir = std::getenv("BANDVOL_OUTPUT_DIR");
    if (dir && *dir && path.front() != '/')
        path = std::string(dir) + "/" + path;
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::invalid_argument("cannot open output file: " + path);
    out << text;
}

void emit(const CommonOptions& o, const Table& table) {
    write_output(o, o.format == "json" ? table.json() : table.csv());
}

int run_bands(const CommonOptions& o) {
    const ModelParams p = make_params(o.limit_fraction, o.alpha);
    Table t;
    t.headers = {"band_index", "eps_lo[hbar_omega]", "eps_hi[hbar_omega]",
                 "width[hbar_omega]", "narrow_unresolved"};
    for (const Band& b : bands_for(o, p)) {
        if (b.narrow_unresolved)
            std::cerr << "warning: band " << b.index
                      << " narrower than the 1e-12 edge resolution; "
                         "midpoint reported\n";
        t.rows.push_back({std::to_string(b.index), fmt(b.eps_lo),
                          fmt(b.eps_hi), fmt(b.width()),
                          b.narrow_unresolved ? "1" : "0"});
    }
    emit(o, t);
    return 0;
}

int run_dispersion(const CommonOptions& o, int band_index) {
    const ModelParams p = make_params(o.limit_fraction, o.alpha);
    Table t;
    t.headers = {"band_index", "k_d[rad]", "eps[hbar_omega]"};
    for (const Band& b : bands_for(o, p)) {
        if (band_index >= 0 && b.index != band_index) continue;
        for (const DispersionPoint& pt : dispersion(p, b, o.n_k))
            t.rows.push_back(
                {std::to_string(b.index), fmt(pt.k_d), fmt(pt.eps)});
    }
    if (band_index >= 0 && t.rows.empty())
        throw std::invalid_argument("band " + std::to_string(band_index) +
                                    " not in the computed set");
    emit(o, t);
    return 0;
}

int run_observables(const CommonOptions& o) {
    const ModelParams p = make_params(o.limit_fraction, o.alpha);
    Table t;
    t.headers = {"eps[hbar_omega]", "sigma2[d^2]", "p_limit[1]", "band_index",
                 "k_d[rad]"};
    const auto bands = bands_for(o, p);
    for (const ObservablePoint& pt : observables_curve(p, bands, o.n_k))
        t.rows.push_back({fmt(pt.eps), fmt(pt.sigma2), fmt(pt.p_limit),
                          std::to_string(pt.band_index), fmt(pt.k_d)});
    emit(o, t);
    return 0;
}

int run_approx(const CommonOptions& o) {
    const ModelParams p = make_params(o.limit_fraction, o.alpha);
    Table t;
    t.headers = {"band_index",
                 "exact_center[hbar_omega]",
                 "exact_width[hbar_omega]",
                 "tb_center[hbar_omega]",
                 "tb_width[hbar_omega]",
                 "tb_center_err[hbar_omega]",
                 "tb_width_ratio[1]",
                 "tb_outside_regime",
                 "fe_mid[hbar_omega]",
                 "fe_rel_err[1]",
                 "gap_above_exact[hbar_omega]",
                 "gap_above_formula[hbar_omega]"};
    const auto bands = bands_for(o, p);
    for (const Band& b : bands) {
        const TightBindingBand tb = tight_binding_band(p, b.index);
        const double exact_mid =
            dispersion_energy(p, b, M_PI / 2.0, harmonic_cell_solver());
        const double k_ext = b.index % 2 == 0
                                 ? b.index * M_PI + M_PI / 2.0
                                 : (b.index + 1) * M_PI - M_PI / 2.0;
        const FreeElectronEnergy fe =
            free_electron_correction(p, k_ext, o.s_max);
        const double fe_mid = fe.eps0 + fe.eps2;
        const bool has_next = b.index + 1 < static_cast<int>(bands.size());
        const double gap_exact =
            has_next ? bands[b.index + 1].eps_lo - b.eps_hi : 0.0;
        t.rows.push_back(
            {std::to_string(b.index), fmt(exact_mid), fmt(b.width()),
             fmt(tb.center()), fmt(tb.bandwidth()),
             fmt(tb.center() - b.midpoint()),
             fmt(b.width() > 0.0 ? tb.bandwidth() / b.width() : 0.0),
             tb.outside_regime ? "1" : "0", fmt(fe_mid),
             fmt(std::fabs(fe_mid - exact_mid) / exact_mid),
             has_next ? fmt(gap_exact) : "",
             has_next ? fmt(gap_at_boundary(p, b.index + 1)) : ""});
    }
    emit(o, t);
    return 0;
}

int run_market(const CommonOptions& o, const std::string& input, int window) {
    std::ifstream in(input, std::ios::binary);
    if (!in)
        throw std::invalid_argument("cannot open input file: " + input);
    const auto bars = market::parse_bars(in);
    const auto volvol =
        market::realized_volvol(bars, window, o.limit_fraction);
    for (const std::string& w : volvol.warnings)
        std::cerr << "warning: " << w << '\n';
    const market::ScanReport report =
        market::band_signature_scan(volvol.points);
    write_output(o, report.to_json() + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Band structure, Bloch-state observables and market-data scans for "
        "the periodic harmonic cell model of price-limited log prices"};
    app.require_subcommand(1);

    CommonOptions o;
    int band_index = -1;
    std::string market_input;
    int market_window = 5;

    CLI::App* bands =
        app.add_subcommand("bands", "Band table: index, edge energies, width");
    add_model_flags(bands, o);

    CLI::App* disp = app.add_subcommand(
        "dispersion", "eps(k) rows over the reduced zone per band");
    add_model_flags(disp, o);
    disp->add_option("--band", band_index, "Restrict to one band index");
    disp->add_option("--n-k", o.n_k, "k-grid points per band");

    CLI::App* obs = app.add_subcommand(
        "observables",
        "Per-state volatility sigma2 and limit probability p_limit");
    add_model_flags(obs, o);
    obs->add_option("--n-k", o.n_k, "k-grid points per band");

    CLI::App* approx = app.add_subcommand(
        "approx",
        "Exact bands against tight-binding and nearly-free predictions");
    add_model_flags(approx, o);
    approx->add_option("--s-max", o.s_max,
                       "Fourier truncation of the second-order sum");

    CLI::App* market = app.add_subcommand(
        "market",
        "Realized volatility/volume windows and band-signature scan "
        "(JSON report)");
    add_model_flags(market, o);
    market->add_option("--input", market_input, "Bar CSV file")->required();
    market->add_option("--window", market_window,
                       "Bars per non-overlapping window");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (bands->parsed()) return run_bands(o);
        if (disp->parsed()) return run_dispersion(o, band_index);
        if (obs->parsed()) return run_observables(o);
        if (approx->parsed()) return run_approx(o);
        if (market->parsed())
            return run_market(o, market_input, market_window);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
