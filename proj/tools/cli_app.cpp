#include "cli_app.hpp"

#include <cmath>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "pbs/config.hpp"
#include "pbs/error.hpp"
#include "pbs/film.hpp"
#include "pbs/io.hpp"
#include "pbs/scenarios.hpp"

namespace pbs::cli {

namespace {

struct Options {
    std::string config = "paper_defaults";
    std::optional<std::string> out;
    std::optional<int> refine;
    bool verbose = false;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--config", o.config, "preset name or config file")->capture_default_str();
    sub->add_option("--out", o.out, "output directory (overrides output_dir)");
    sub->add_option("--refine", o.refine, "extra quadrature doublings (overrides quad_refine)")
        ->check(CLI::Range(0, 4));
    sub->add_flag("--verbose", o.verbose, "print progress");
}

ScenarioConfig resolve(const Options& o) {
    ScenarioConfig cfg = load_config(o.config);
    if (o.out) cfg.output_dir = *o.out;
    if (o.refine) cfg.refine = *o.refine;
    cfg.validate();
    return cfg;
}

int validate_film(const ScenarioConfig& cfg, std::ostream& out) {
    bool ok = true;
    for (double lambda : {728.0, 797.0, 813.0}) {
        const JonesMatrix f = film_matrix(cfg.setup.film, {0.0, 0.0}, lambda);
        const double scale = f.max_abs();
        const double dev = std::max({std::abs(f.xy), std::abs(f.yx), std::abs(f.xx - f.yy)});
        const bool pass = scale > 0.0 && dev <= 1e-12 * scale;
        ok = ok && pass;
        out << "F(0, " << lambda << " nm) proportional to identity: deviation " << format_number(scale > 0 ? dev / scale : 0.0)
            << (pass ? " PASS" : " FAIL") << "\n";
    }
    out << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kOk : kConvergenceError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Polarization entanglement through a plasmonic hole-array film", "pbs"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    Options o;
    const std::vector<std::pair<std::string, ScenarioKind>> scenario_cmds = {
        {"spectrum", ScenarioKind::spectrum},
        {"visibility", ScenarioKind::visibility_sweep},
        {"polmap", ScenarioKind::polmap},
        {"channel", ScenarioKind::channel},
    };
    std::vector<CLI::App*> subs;
    for (const auto& [name, kind] : scenario_cmds) {
        auto* sub = app.add_subcommand(name, "run the " + to_string(kind) + " scenario");
        add_common(sub, o);
        subs.push_back(sub);
    }
    auto* vf = app.add_subcommand("validate-film", "check F(0, lambda) is proportional to the identity");
    add_common(vf, o);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kConfigError;
    }

    try {
        ScenarioConfig cfg = resolve(o);
        if (vf->parsed()) return validate_film(cfg, out);
        for (std::size_t i = 0; i < subs.size(); ++i) {
            if (!subs[i]->parsed()) continue;
            cfg.kind = scenario_cmds[i].second;
            Progress progress;
            if (o.verbose) progress = [&err](const std::string& m) { err << m << "\n"; };
            const auto files = run_scenario(cfg, cfg.output_dir, progress);
            for (const auto& f : files) out << f.string() << "\n";
        }
        return kOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const ConvergenceError& e) {
        err << "convergence error: " << e.what() << "\n";
        return kConvergenceError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }
}

}  // namespace pbs::cli
