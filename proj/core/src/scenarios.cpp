#include "pbs/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "pbs/error.hpp"
#include "pbs/io.hpp"
#include "pbs/parallel.hpp"

namespace pbs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

std::string degree_label(double rad) {
    const double deg = std::round(rad / kDeg * 1e6) / 1e6;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", deg == 0.0 ? 0.0 : deg);
    return buf;
}

void report(const Progress& p, const std::string& msg) {
    if (p) p(msg);
}

}  // namespace

std::size_t Table::column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::out_of_range("no column named " + name);
    return static_cast<std::size_t>(it - header.begin());
}

std::vector<double> Table::column_values(const std::string& name) const {
    const std::size_t c = column(name);
    std::vector<double> out;
    for (const auto& r : rows) out.push_back(r[c]);
    return out;
}

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
    out += '\n';
    for (const auto& r : rows) out += format_row(r) + '\n';
    return out;
}

std::string spectrum_column(bool parallel, double tilt_rad) {
    return std::string(parallel ? "par_" : "perp_") + degree_label(tilt_rad) + "deg";
}

std::string visibility_column(double lambda_nm, double beta2_rad) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", lambda_nm);
    return "V_" + std::string(buf) + "nm_" + degree_label(beta2_rad) + "deg";
}

Vec2 tilt_wavevector(double tilt_rad, double azimuth_rad, double lambda_nm) {
    const double q = 2.0 * kPi / lambda_nm * std::sin(tilt_rad);
    return {q * std::cos(azimuth_rad), q * std::sin(azimuth_rad)};
}

Table run_spectrum(const ScenarioConfig& cfg, const Progress& progress) {
    cfg.validate();
    const auto lambdas = cfg.spectrum_lambda.values();
    const JonesVector par = JonesVector::linear(cfg.tilt_azimuth_rad);
    const JonesVector perp = JonesVector::linear(cfg.tilt_azimuth_rad + 0.5 * kPi);

    Table t;
    t.header.push_back("lambda_nm");
    for (double tilt : cfg.tilts_rad) {
        t.header.push_back(spectrum_column(false, tilt));
        t.header.push_back(spectrum_column(true, tilt));
    }
    report(progress, "spectrum: " + std::to_string(lambdas.size()) + " wavelengths x " +
                         std::to_string(cfg.tilts_rad.size()) + " tilts");
    t.rows.resize(lambdas.size());
    try {
        parallel_for(lambdas.size(), [&](std::size_t i) {
            const double lambda = lambdas[i];
            auto& row = t.rows[i];
            row.push_back(lambda);
            for (double tilt : cfg.tilts_rad) {
                const Vec2 q = tilt_wavevector(tilt, cfg.tilt_azimuth_rad, lambda);
                row.push_back(transmittance(cfg.setup.film, q, lambda, perp));
                row.push_back(transmittance(cfg.setup.film, q, lambda, par));
            }
        });
    } catch (const DomainError& e) {
        throw ConfigError(std::string("spectrum: ") + e.what());
    }
    return t;
}

std::vector<std::size_t> find_peaks(const std::vector<double>& v, double min_prominence) {
    std::vector<std::size_t> peaks;
    const std::size_t n = v.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (!(v[i] > v[i - 1])) continue;
        // Plateaus count once, at their last sample.
        std::size_t j = i;
        while (j + 1 < n && v[j + 1] == v[i]) ++j;
        if (j + 1 == n || !(v[j + 1] < v[i])) {
            i = j;
            continue;
        }
        // Prominence: height above the higher of the two bases, where each
        // base is the minimum reached before meeting higher ground.
        double left_min = v[i];
        for (std::size_t k = i; k-- > 0;) {
            if (v[k] > v[i]) break;
            left_min = std::min(left_min, v[k]);
        }
        double right_min = v[i];
        for (std::size_t k = j + 1; k < n; ++k) {
            if (v[k] > v[i]) break;
            right_min = std::min(right_min, v[k]);
        }
        if (v[i] - std::max(left_min, right_min) >= min_prominence) peaks.push_back(j);
        i = j;
    }
    return peaks;
}

Table run_visibility_sweep(const ScenarioConfig& cfg, const Progress& progress) {
    cfg.validate();
    const auto apertures = cfg.semiaperture_deg.values();
    const auto& lambdas = cfg.sweep_wavelengths_nm;
    const auto& betas = cfg.beta2_rad;
    const QuadratureOptions quad = cfg.effective_quadrature();

    std::vector<double> inputs;
    for (double b : betas) inputs.push_back(b + 0.5 * kPi);

    auto visibilities = [&](const SetupParams& setup, const QuadratureOptions& q) {
        const TelescopeKernel kernel(setup, q);
        const auto maps = field_maps(inputs, cfg.grid, kernel);
        std::vector<double> v;
        for (std::size_t b = 0; b < betas.size(); ++b) {
            v.push_back(visibility(betas[b], maps[b], {cfg.iris_fraction}).visibility);
        }
        return v;
    };

    Table t;
    t.header.push_back("semiaperture_deg");
    for (double l : lambdas) {
        for (double b : betas) t.header.push_back(visibility_column(l, b));
    }
    t.rows.assign(apertures.size(), std::vector<double>(1 + lambdas.size() * betas.size(), 0.0));
    for (std::size_t a = 0; a < apertures.size(); ++a) t.rows[a][0] = apertures[a];

    // Cells run one after another; each kernel and grid evaluation is itself
    // parallel, which keeps memory bounded on fine rules.
    for (std::size_t a = 0; a < apertures.size(); ++a) {
        for (std::size_t l = 0; l < lambdas.size(); ++l) {
            SetupParams setup = cfg.setup;
            setup.lambda_nm = lambdas[l];
            setup.semiaperture_rad = apertures[a] * kDeg;
            const auto v = visibilities(setup, quad);
            const auto fine = visibilities(setup, quad.refined(1));
            for (std::size_t b = 0; b < betas.size(); ++b) {
                const double change = std::abs(fine[b] - v[b]);
                if (!(change < kVisibilityConvergenceTol)) {
                    char buf[160];
                    std::snprintf(buf, sizeof buf,
                                  "visibility not converged at %g nm, %g deg, beta2 %s deg: %.6f vs %.6f", lambdas[l],
                                  apertures[a], degree_label(betas[b]).c_str(), v[b], fine[b]);
                    throw ConvergenceError(buf);
                }
                t.rows[a][1 + l * betas.size() + b] = v[b];
            }
            char buf[96];
            std::snprintf(buf, sizeof buf, "visibility: %g nm, semiaperture %g deg done", lambdas[l], apertures[a]);
            report(progress, buf);
        }
    }
    return t;
}

FieldMap run_polmap(const ScenarioConfig& cfg, const Progress& progress) {
    cfg.validate();
    report(progress, "polmap: building telescope kernel");
    const TelescopeKernel kernel(cfg.setup, cfg.effective_quadrature());
    report(progress, "polmap: evaluating " + std::to_string(cfg.grid.points) + "^2 detector points");
    try {
        return field_map(cfg.input_polarization_rad, cfg.grid, kernel);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("polmap: ") + e.what());
    }
}

std::vector<std::pair<std::string, std::string>> polmap_files(const FieldMap& map) {
    const std::size_t n = map.side();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> intensity(n * n), psi(n * n, nan), ratio(n * n, nan);
    double imax = 0.0;
    for (std::size_t idx = 0; idx < n * n; ++idx) {
        intensity[idx] = map.intensity(idx);
        imax = std::max(imax, intensity[idx]);
        if (const auto e = map.ellipse(idx)) {
            psi[idx] = e->orientation;
            ratio[idx] = e->axis_ratio;
        }
    }

    std::string csv = "q3x,q3y,theta3x_deg,theta3y_deg,intensity,psi_rad,axis_ratio\n";
    for (std::size_t iy = 0; iy < n; ++iy) {
        for (std::size_t ix = 0; ix < n; ++ix) {
            const std::size_t idx = iy * n + ix;
            csv += format_row({map.axis[ix], map.axis[iy], map.axis_angle[ix] / kDeg, map.axis_angle[iy] / kDeg,
                               intensity[idx], psi[idx], ratio[idx]});
            csv += '\n';
        }
    }

    // Flip rows so that +q3y is up.
    auto image = [&](const std::vector<double>& values, double lo, double hi) {
        std::vector<double> flipped;
        flipped.reserve(values.size());
        for (std::size_t r = 0; r < n; ++r) {
            const std::size_t iy = n - 1 - r;
            flipped.insert(flipped.end(), values.begin() + static_cast<long>(iy * n),
                           values.begin() + static_cast<long>((iy + 1) * n));
        }
        return encode_pgm16(n, n, quantize(flipped, lo, hi));
    };
    return {
        {"polmap.csv", csv},
        {"polmap_intensity.pgm", image(intensity, 0.0, imax > 0.0 ? imax : 1.0)},
        {"polmap_axis_ratio.pgm", image(ratio, -1.0, 1.0)},
        {"polmap_psi.pgm", image(psi, -0.5 * kPi, 0.5 * kPi)},
    };
}

ChannelReport run_channel(const ScenarioConfig& cfg) {
    cfg.validate();
    ChannelReport r;
    try {
        r.state = postselect_channel(cfg.t_matrix, cfg.gram());
    } catch (const DomainError& e) {
        throw ConfigError(std::string("channel: ") + e.what());
    }
    r.concurrence = concurrence(r.state);
    r.v0 = visibility(0.0, r.state);
    r.v45 = visibility(0.25 * kPi, r.state);
    return r;
}

std::vector<std::pair<std::string, std::string>> channel_files(const ChannelReport& r) {
    std::string summary = "quantity,value\n";
    summary += "success_weight," + format_number(r.state.success_weight) + "\n";
    summary += "concurrence," + format_number(r.concurrence) + "\n";
    summary += "V_0deg," + format_number(r.v0.visibility) + "\n";
    summary += "V_45deg," + format_number(r.v45.visibility) + "\n";

    std::string rho = "row,col,re,im\n";
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            rho += std::to_string(i) + "," + std::to_string(j) + "," +
                   format_row({r.state.rho(i, j).real(), r.state.rho(i, j).imag()}) + "\n";
        }
    }
    return {{"channel_summary.csv", summary}, {"channel_rho.csv", rho}};
}

std::vector<std::filesystem::path> run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& dir,
                                                const Progress& progress) {
    std::vector<std::pair<std::string, std::string>> files;
    switch (cfg.kind) {
        case ScenarioKind::spectrum:
            files.emplace_back("spectrum.csv", run_spectrum(cfg, progress).to_csv());
            break;
        case ScenarioKind::visibility_sweep:
            files.emplace_back("visibility.csv", run_visibility_sweep(cfg, progress).to_csv());
            break;
        case ScenarioKind::polmap:
            files = polmap_files(run_polmap(cfg, progress));
            break;
        case ScenarioKind::channel:
            files = channel_files(run_channel(cfg));
            break;
    }
    std::vector<std::filesystem::path> written;
    for (const auto& [name, content] : files) {
        written.push_back(dir / name);
        write_text_file(written.back(), content);
    }
    return written;
}

}  // namespace pbs
