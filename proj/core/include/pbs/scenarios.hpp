#pragma once

// Experiment pipelines: transmission spectra under tilt, visibility against
// semiaperture, output polarization maps and the monomode channel report.
// Every pipeline is deterministic; files are byte-identical across runs and
// thread counts.

#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pbs/config.hpp"

namespace pbs {

using Progress = std::function<void(const std::string&)>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Index of a column; throws std::out_of_range if absent.
    std::size_t column(const std::string& name) const;
    std::vector<double> column_values(const std::string& name) const;
    std::string to_csv() const;
};

/// Column label for a tilt, e.g. "par_2deg", "perp_0.5deg".
std::string spectrum_column(bool parallel, double tilt_rad);
/// "V_797nm_45deg".
std::string visibility_column(double lambda_nm, double beta2_rad);

/// Incident transverse wavevector for a tilt: k sin(tilt) along the azimuth.
Vec2 tilt_wavevector(double tilt_rad, double azimuth_rad, double lambda_nm);

/// Transmittance |F(q, lambda) e|^2 for polarization parallel and
/// perpendicular to the tilt azimuth. Columns: lambda_nm, then perp/par per tilt.
Table run_spectrum(const ScenarioConfig& cfg, const Progress& progress = {});

/// Indices of interior local maxima whose prominence is at least
/// min_prominence. A flat top is reported at its last sample; the first and
/// last samples are never peaks.
std::vector<std::size_t> find_peaks(const std::vector<double>& values, double min_prominence);

/// V for every (semiaperture, lambda, beta2). Each cell is recomputed with
/// one extra quadrature refinement; a change above 1e-3 throws
/// ConvergenceError. Columns: semiaperture_deg, then V_<lambda>nm_<beta2>deg.
Table run_visibility_sweep(const ScenarioConfig& cfg, const Progress& progress = {});

inline constexpr double kVisibilityConvergenceTol = 1e-3;

/// Field map for cfg.input_polarization_rad at cfg.setup.lambda_nm.
FieldMap run_polmap(const ScenarioConfig& cfg, const Progress& progress = {});

/// CSV (q3x,q3y,theta3x_deg,theta3y_deg,intensity,psi_rad,axis_ratio) and
/// PGM images of intensity (normalized to the maximum), axis ratio
/// ([-1, 1]) and orientation ([-pi/2, pi/2)). The top image row is the
/// largest q3y.
std::vector<std::pair<std::string, std::string>> polmap_files(const FieldMap& map);

struct ChannelReport {
    PostselectedState state;
    double concurrence = 0.0;
    VisibilityResult v0;
    VisibilityResult v45;
};

ChannelReport run_channel(const ScenarioConfig& cfg);
std::vector<std::pair<std::string, std::string>> channel_files(const ChannelReport& report);

/// Runs the scenario selected by cfg.kind and writes its files into dir.
/// Returns the written paths in a fixed order.
std::vector<std::filesystem::path> run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& dir,
                                                const Progress& progress = {});

}  // namespace pbs
