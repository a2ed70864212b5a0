#pragma once

// Scenario configuration: a flat key = value file (INI style, '#' or ';'
// comments). Angles are degrees in the file and radians in memory. Unknown
// keys are rejected so that typos do not silently fall back to defaults.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pbs/optics.hpp"
#include "pbs/quantum.hpp"

namespace pbs {

enum class ScenarioKind { spectrum, visibility_sweep, polmap, channel };

std::string to_string(ScenarioKind kind);
ScenarioKind parse_scenario_kind(const std::string& s);

struct Range {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    /// start, start + step, ..., up to stop (inclusive within step * 1e-9).
    std::vector<double> values() const;
};

enum class GramKind { all_ones, identity, explicit_entries };

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::visibility_sweep;
    SetupParams setup;  // lambda_nm is the polmap/channel wavelength
    std::optional<std::string> film_table;  // path of a tabulated film
    QuadratureOptions quadrature;
    int refine = 0;     // extra cell doublings
    std::string output_dir = "out";

    // spectrum
    Range spectrum_lambda{650.0, 900.0, 0.5};
    std::vector<double> tilts_rad;          // 0..6 degrees
    double tilt_azimuth_rad = 0.0;          // direction of the incident q

    // visibility_sweep
    Range semiaperture_deg{0.0, 10.0, 0.5};  // kept in degrees: it labels rows
    std::vector<double> beta2_rad;
    std::vector<double> sweep_wavelengths_nm{797.0, 728.0};

    // polmap
    double input_polarization_rad = 0.0;
    GridSpec grid;
    std::optional<double> iris_fraction;

    // channel
    JonesMatrix t_matrix = JonesMatrix::identity();
    GramKind gram_kind = GramKind::all_ones;
    Matrix4c gram_entries = Matrix4c::Ones();

    ScenarioConfig();

    GramMatrix gram() const;
    QuadratureOptions effective_quadrature() const { return quadrature.refined(refine); }
    /// Throws ConfigError for empty or unordered ranges and invalid physics.
    void validate() const;

    /// Loads the tabulated film named by film_table, if any.
    void load_film();

    bool operator==(const ScenarioConfig& other) const;
};

/// Parses config text. Throws ConfigError.
ScenarioConfig parse_config(const std::string& text);
/// Writes every key with round-trip precision.
std::string serialize_config(const ScenarioConfig& cfg);

/// Built-in preset names: paper_defaults, fig2, fig3, fig4, fig4_90, case_i,
/// case_ii. The same texts ship as configs/<name>.ini.
std::vector<std::string> preset_names();
std::optional<std::string> preset_text(const std::string& name);

/// A preset name or a path to a config file. Relative film_table paths are
/// resolved against the config file's directory.
ScenarioConfig load_config(const std::string& name_or_path);

}  // namespace pbs
