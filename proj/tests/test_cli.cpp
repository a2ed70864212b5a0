#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"
#include "pbs/config.hpp"
#include "pbs/film.hpp"
#include "pbs/scenarios.hpp"

namespace fs = std::filesystem;
using namespace pbs;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("pbs_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text) {
        std::ofstream(dir_ / name) << text;
        return (dir_ / name).string();
    }
    std::string slurp(const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 1);
    EXPECT_EQ(run({"spectrum", "--bogus"}).code, 1);
    EXPECT_EQ(run({"spectrum", "--refine", "5"}).code, 1);
    EXPECT_EQ(run({"spectrum", "channel"}).code, 1);
    const Result help = run({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("validate-film"), std::string::npos);
    EXPECT_NE(help.out.find("pbs"), std::string::npos);
}

TEST_F(Cli, ConfigErrors) {
    EXPECT_EQ(run({"spectrum", "--config", (dir_ / "missing.ini").string()}).code, 1);
    const Result r = run({"spectrum", "--config", write("bad.ini", "wavelenght_nm = 797\n")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("wavelenght_nm"), std::string::npos);
    EXPECT_EQ(run({"spectrum", "--config", write("tilt.ini", "tilts_deg = 40\n"), "--out", dir_.string()}).code, 1);
}

TEST_F(Cli, ValidateFilmPasses) {
    const Result r = run({"validate-film", "--config", "paper_defaults"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("728 nm"), std::string::npos);
    EXPECT_NE(r.out.find("813 nm"), std::string::npos);
    EXPECT_EQ(r.out.substr(r.out.size() - 5), "PASS\n");
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST_F(Cli, ValidateFilmFailsOnAnisotropicTable) {
    FilmModel m;
    FilmTable t;
    t.lambda_nm = {700.0, 850.0};
    t.qx = {0.0};
    t.qy = {0.0};
    t.values = {JonesMatrix{0.1, 0.0, 0.0, 0.2}, JonesMatrix{0.1, 0.0, 0.0, 0.2}};
    m.table = t;
    save_tabulated(m, dir_ / "film.csv");
    const Result r = run({"validate-film", "--config", write("t.ini", "film_table = film.csv\n")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST_F(Cli, VisibilityStartsAtOne) {
    const std::string cfg = write("v.ini",
                                  "semiaperture_min_deg = 0\nsemiaperture_max_deg = 2\nsemiaperture_step_deg = 2\n"
                                  "wavelengths_nm = 797\nmap_points = 11\n");
    const Result r = run({"visibility", "--config", cfg, "--out", (dir_ / "out").string(), "--verbose"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.err.find("visibility"), std::string::npos);
    std::istringstream csv(slurp(dir_ / "out" / "visibility.csv"));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "semiaperture_deg,V_797nm_0deg,V_797nm_45deg");
    std::getline(csv, line);
    EXPECT_EQ(line, "0.00000000e+00,1.00000000e+00,1.00000000e+00");
}

TEST_F(Cli, ConvergenceErrorExitsWithTwo) {
    const std::string cfg = write("c.ini",
                                  "semiaperture_min_deg = 8\nsemiaperture_max_deg = 8\nwavelengths_nm = 797\n"
                                  "map_points = 11\nquad_cells = 5\nquad_order = 1\nquad_boundary_order = 1\n");
    const Result r = run({"visibility", "--config", cfg, "--out", dir_.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("convergence"), std::string::npos);
}

TEST_F(Cli, PolmapEmitsFourFilesMatchingLibrary) {
    const Result r = run({"polmap", "--config", "fig4", "--out", (dir_ / "cli").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const std::vector<std::string> names{"polmap.csv", "polmap_intensity.pgm", "polmap_axis_ratio.pgm",
                                         "polmap_psi.pgm"};
    std::size_t count = 0;
    for (const auto& e : fs::directory_iterator(dir_ / "cli")) {
        (void)e;
        ++count;
    }
    EXPECT_EQ(count, 4u);
    const auto lib = run_scenario(load_config("fig4"), dir_ / "lib");
    ASSERT_EQ(lib.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(lib[i].filename(), names[i]);
        EXPECT_EQ(slurp(dir_ / "cli" / names[i]), slurp(lib[i])) << names[i];
    }
}

TEST_F(Cli, SubcommandOverridesScenarioKind) {
    // A channel config; the spectrum subcommand still runs a spectrum.
    const std::string cfg = write("s.ini", "scenario = channel\nlambda_min_nm = 790\nlambda_max_nm = 800\n");
    const Result r = run({"spectrum", "--config", cfg, "--out", dir_.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(fs::exists(dir_ / "spectrum.csv"));
}

TEST_F(Cli, ChannelReports) {
    const Result r = run({"channel", "--config", "case_ii", "--out", dir_.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(slurp(dir_ / "channel_summary.csv").find("concurrence,1.00000000e+00"), std::string::npos);
    EXPECT_TRUE(fs::exists(dir_ / "channel_rho.csv"));
    const std::string zero = write("z.ini", "scenario = channel\nt_matrix = 0,0,0,0,0,0,0,0\n");
    EXPECT_EQ(run({"channel", "--config", zero, "--out", dir_.string()}).code, 1);
}
