#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "pbs/error.hpp"
#include "pbs/io.hpp"
#include "pbs/parallel.hpp"
#include "pbs/scenarios.hpp"
#include "support.hpp"

using namespace pbs;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

ScenarioConfig spectrum_config() {
    ScenarioConfig c;
    c.kind = ScenarioKind::spectrum;
    c.spectrum_lambda = {700.0, 850.0, 0.5};
    c.tilts_rad = {0.0, 2 * kDeg};
    return c;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

struct ThreadsOverride {
    explicit ThreadsOverride(const char* n) { setenv("PBS_THREADS", n, 1); }
    ~ThreadsOverride() { unsetenv("PBS_THREADS"); }
};

}  // namespace

TEST(Io, NumberFormat) {
    EXPECT_EQ(format_number(1.0), "1.00000000e+00");
    EXPECT_EQ(format_number(-0.0), "0.00000000e+00");
    EXPECT_EQ(format_number(797.5), "7.97500000e+02");
    EXPECT_EQ(format_row({1.0, 2.5}), "1.00000000e+00,2.50000000e+00");
}

TEST(Io, Pgm) {
    const auto q = quantize({0.0, 0.5, 1.0, 2.0, -1.0, std::nan("")}, 0.0, 1.0);
    EXPECT_EQ(q, (std::vector<std::uint16_t>{0, 32768, 65535, 65535, 0, 0}));
    const std::string img = encode_pgm16(3, 2, q);
    const std::string header = "P5\n3 2\n65535\n";
    ASSERT_EQ(img.size(), header.size() + 12);
    EXPECT_EQ(img.substr(0, header.size()), header);
    EXPECT_EQ(static_cast<unsigned char>(img[header.size() + 2]), 0x80);  // big-endian 32768
    EXPECT_EQ(static_cast<unsigned char>(img[header.size() + 3]), 0x00);
}

TEST(Scenarios, ColumnLabels) {
    EXPECT_EQ(spectrum_column(true, 2 * kDeg), "par_2deg");
    EXPECT_EQ(spectrum_column(false, 0.5 * kDeg), "perp_0.5deg");
    EXPECT_EQ(visibility_column(797.0, 45 * kDeg), "V_797nm_45deg");
}

TEST(Scenarios, FindPeaks) {
    EXPECT_EQ(find_peaks({0, 1, 0, 2, 0}, 0.5), (std::vector<std::size_t>{1, 3}));
    EXPECT_EQ(find_peaks({0, 1, 0.9, 2, 0}, 0.5), (std::vector<std::size_t>{3}));
    EXPECT_EQ(find_peaks({0, 1, 1, 0}, 0.5), (std::vector<std::size_t>{2}));
    EXPECT_TRUE(find_peaks({3, 2, 1}, 0.5).empty());
    EXPECT_EQ(find_peaks({0, 2, 2, 3, 0}, 0.5), (std::vector<std::size_t>{3}));
    EXPECT_EQ(find_peaks({0, 1, 0, 1, 0}, 1.0), (std::vector<std::size_t>{1, 3}));
    EXPECT_TRUE(find_peaks({1, 1, 1}, 0.5).empty());
}

TEST(Spectrum, NormalIncidenceIsPolarizationIndependent) {
    const Table t = run_spectrum(spectrum_config());
    EXPECT_EQ(t.column_values("par_0deg"), t.column_values("perp_0deg"));
    EXPECT_EQ(t.rows.size(), 301u);
    EXPECT_EQ(t.header.size(), 5u);
}

TEST(Spectrum, NormalIncidencePeaksAtCalibration) {
    const Table t = run_spectrum(spectrum_config());
    const auto lambda = t.column_values("lambda_nm");
    const auto v = t.column_values("par_0deg");
    const double max = *std::max_element(v.begin(), v.end());
    const auto peaks = find_peaks(v, 0.05 * max);
    ASSERT_EQ(peaks.size(), 2u);
    EXPECT_NEAR(lambda[peaks[0]], 728.0, 0.5);
    EXPECT_NEAR(lambda[peaks[1]], 797.0, 0.5);
}

TEST(Spectrum, TiltSplitsParallelPolarization) {
    const Table t = run_spectrum(spectrum_config());
    const auto lambda = t.column_values("lambda_nm");
    const auto par = t.column_values("par_2deg");
    const auto perp = t.column_values("perp_2deg");
    EXPECT_NE(par, perp);
    // The (1,1) and (-1,-1) lines move apart, symmetric about 797 nm to first order.
    const double max = *std::max_element(par.begin(), par.end());
    std::vector<double> near;
    for (auto p : find_peaks(par, 0.05 * max)) {
        if (lambda[p] > 770) near.push_back(lambda[p]);
    }
    ASSERT_EQ(near.size(), 2u);
    EXPECT_LT(near[0], 790.0);
    EXPECT_GT(near[1], 805.0);
    EXPECT_NEAR(0.5 * (near[0] + near[1]), 797.0, 2.0);
}

TEST(Spectrum, RejectsNonParaxialTilt) {
    ScenarioConfig c = spectrum_config();
    c.tilts_rad = {30 * kDeg};
    EXPECT_THROW(run_spectrum(c), ConfigError);
}

TEST(Spectrum, DeterministicAcrossThreadCounts) {
    std::string one, three;
    {
        ThreadsOverride t("1");
        EXPECT_EQ(worker_count(), 1u);
        one = run_spectrum(spectrum_config()).to_csv();
    }
    {
        ThreadsOverride t("3");
        EXPECT_EQ(worker_count(), 3u);
        three = run_spectrum(spectrum_config()).to_csv();
    }
    EXPECT_EQ(one, three);
}

TEST(Visibility, SmallSweep) {
    ScenarioConfig c;
    c.semiaperture_deg = {0.0, 4.0, 4.0};
    c.sweep_wavelengths_nm = {797.0};
    c.beta2_rad = {0.0, 22.5 * kDeg, 45 * kDeg};
    c.grid.points = 21;
    const Table t = run_visibility_sweep(c);
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.header, (std::vector<std::string>{"semiaperture_deg", "V_797nm_0deg", "V_797nm_22.5deg",
                                                  "V_797nm_45deg"}));
    for (std::size_t i = 1; i < 4; ++i) EXPECT_NEAR(t.rows[0][i], 1.0, 1e-12);
    for (std::size_t i = 1; i < 4; ++i) EXPECT_LT(t.rows[1][i], 1.0);
}

TEST(Visibility, CoarseRuleReportsNonConvergence) {
    ScenarioConfig c;
    c.semiaperture_deg = {8.0, 8.0, 1.0};
    c.sweep_wavelengths_nm = {797.0};
    c.quadrature = {5, 1, 1};
    c.grid.points = 11;
    EXPECT_THROW(run_visibility_sweep(c), ConvergenceError);
}

TEST(Polmap, FilesAndDeterminism) {
    ScenarioConfig c = load_config("fig4");
    c.grid.points = 21;
    c.quadrature.cells = 101;
    const FieldMap m = run_polmap(c);
    EXPECT_EQ(m.side(), 21u);
    const auto files = polmap_files(m);
    ASSERT_EQ(files.size(), 4u);
    EXPECT_EQ(files[0].first, "polmap.csv");
    std::size_t lines = std::count(files[0].second.begin(), files[0].second.end(), '\n');
    EXPECT_EQ(lines, 1u + 21 * 21);
    for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(files[i].second.substr(0, 15), "P5\n21 21\n65535\n");
    EXPECT_EQ(polmap_files(run_polmap(c)), files);

    const auto dir = std::filesystem::temp_directory_path() / "pbs_polmap_test";
    std::filesystem::remove_all(dir);
    const auto written = run_scenario(c, dir);
    ASSERT_EQ(written.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(slurp(written[i]), files[i].second);
    std::filesystem::remove_all(dir);
}

TEST(Polmap, CsvRowsMatchMap) {
    ScenarioConfig c = load_config("fig4");
    c.grid.points = 5;
    c.quadrature.cells = 61;
    const FieldMap m = run_polmap(c);
    std::istringstream csv(polmap_files(m)[0].second);
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "q3x,q3y,theta3x_deg,theta3y_deg,intensity,psi_rad,axis_ratio");
    for (std::size_t idx = 0; idx < 25; ++idx) {
        ASSERT_TRUE(std::getline(csv, line));
        std::vector<double> v;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) v.push_back(std::stod(cell));
        ASSERT_EQ(v.size(), 7u);
        EXPECT_EQ(v[0], std::stod(format_number(m.axis[idx % 5])));
        EXPECT_EQ(v[1], std::stod(format_number(m.axis[idx / 5])));
        EXPECT_EQ(v[4], std::stod(format_number(m.intensity(idx))));
    }
}

TEST(Channel, Cases) {
    ScenarioConfig c = load_config("case_ii");
    auto r = run_channel(c);
    EXPECT_NEAR(r.concurrence, 1.0, 1e-9);
    EXPECT_NEAR(r.v0.visibility, 1.0, 1e-9);
    EXPECT_NEAR(r.v45.visibility, 1.0, 1e-9);

    r = run_channel(load_config("case_i"));
    EXPECT_NEAR(r.concurrence, 0.0, 1e-9);
    EXPECT_NEAR(r.v0.visibility, 1.0, 1e-9);
    EXPECT_NEAR(r.v45.visibility, 0.0, 1e-9);

    // diag(1, 1/2): the pure state (|XY> - |YX>/2) / sqrt(5/4). Projecting
    // photon 2 onto any linear state leaves photon 1 in a real, hence
    // linear, pure state, so every monomode visibility is 1 while the
    // concurrence drops to 2 * (1 * 1/2) / (5/4) = 0.8.
    c.t_matrix = {1.0, 0.0, 0.0, 0.5};
    r = run_channel(c);
    EXPECT_NEAR(r.concurrence, 0.8, 1e-9);
    EXPECT_NEAR(r.v45.visibility, 1.0, 1e-9);
    EXPECT_NEAR(r.state.success_weight, 0.625, 1e-12);

    c.t_matrix = JonesMatrix::zero();
    EXPECT_THROW(run_channel(c), ConfigError);
}

TEST(Channel, Files) {
    const auto r = run_channel(load_config("case_i"));
    const auto files = channel_files(r);
    ASSERT_EQ(files.size(), 2u);
    std::istringstream summary(files[0].second);
    std::string line;
    std::getline(summary, line);
    EXPECT_EQ(line, "quantity,value");
    const std::vector<std::pair<std::string, double>> want{
        {"success_weight", 1.0}, {"concurrence", 0.0}, {"V_0deg", 1.0}, {"V_45deg", 0.0}};
    for (const auto& [name, value] : want) {
        ASSERT_TRUE(std::getline(summary, line));
        const auto comma = line.find(',');
        EXPECT_EQ(line.substr(0, comma), name);
        EXPECT_NEAR(std::stod(line.substr(comma + 1)), value, 1e-12) << name;
    }
    EXPECT_EQ(std::count(files[1].second.begin(), files[1].second.end(), '\n'), 17);
    EXPECT_NE(files[1].second.find("1,1,5.00000000e-01,0.00000000e+00\n"), std::string::npos);
}
