#include "pbs/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "pbs/error.hpp"

namespace pbs {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kMm = 1.0e6;  // nm per mm

std::string trim(std::string s) {
    const auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

double parse_number(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const char* end = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(t.data(), end, v);
    if (ec != std::errc() || ptr != end || t.empty() || !std::isfinite(v)) {
        throw ConfigError("config: key '" + key + "' expects a finite number, got '" + text + "'");
    }
    return v;
}

int parse_int(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    int v = 0;
    const char* end = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(t.data(), end, v);
    if (ec != std::errc() || ptr != end || t.empty()) {
        throw ConfigError("config: key '" + key + "' expects an integer, got '" + text + "'");
    }
    return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(key, item));
    if (out.empty()) throw ConfigError("config: key '" + key + "' expects a nonempty list");
    return out;
}

// Shortest decimal text whose parsed value, times scale, reproduces v
// exactly. Keeps serialize/parse an exact round trip for unit-converted keys.
std::string exact_text(double v, double scale) {
    char buf[64];
    const double target = v / scale;
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, target);
        if (std::strtod(buf, nullptr) * scale == v) return buf;
    }
    double cand = target;
    for (int i = 0; i < 8; ++i) {
        for (double c : {std::nextafter(cand, HUGE_VAL), std::nextafter(cand, -HUGE_VAL)}) {
            std::snprintf(buf, sizeof buf, "%.17g", c);
            if (std::strtod(buf, nullptr) * scale == v) return buf;
        }
        cand = std::nextafter(cand, HUGE_VAL);
    }
    throw ConfigError("config: value cannot be serialized exactly");
}

std::string text(double v) { return exact_text(v, 1.0); }

std::string list_text(const std::vector<double>& v, double scale) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += exact_text(v[i], scale);
    }
    return out;
}

std::string gram_kind_text(GramKind k) {
    switch (k) {
        case GramKind::all_ones: return "ones";
        case GramKind::identity: return "identity";
        case GramKind::explicit_entries: return "explicit";
    }
    return "ones";
}

template <class Film>
auto family_slot(Film& film, bool diagonal) -> decltype(&film.families[0]) {
    for (auto& f : film.families) {
        const auto o = f.orders.at(0);
        const bool is_diag = std::abs(o.m1) == 1 && std::abs(o.m2) == 1;
        if (is_diag == diagonal) return &f;
    }
    return nullptr;
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "scenario", "wavelength_nm", "focal_length_mm", "substrate_index", "substrate_thickness_mm",
        "semiaperture_deg", "period_nm", "direct_amplitude_re", "direct_amplitude_im", "film_thickness_nm",
        "hole_diameter_nm", "families", "diagonal_lambda0_nm", "diagonal_width_nm", "diagonal_amplitude_re",
        "diagonal_amplitude_im", "diagonal_phase_deg", "axial_lambda0_nm", "axial_width_nm",
        "axial_amplitude_re", "axial_amplitude_im", "axial_phase_deg", "film_table", "quad_cells",
        "quad_order", "quad_boundary_order", "quad_refine", "output_dir", "lambda_min_nm", "lambda_max_nm",
        "lambda_step_nm", "tilts_deg", "tilt_azimuth_deg", "semiaperture_min_deg", "semiaperture_max_deg",
        "semiaperture_step_deg", "beta2_deg", "wavelengths_nm", "input_polarization_deg", "map_points",
        "map_half_extent_deg", "iris_fraction", "t_matrix", "gram", "gram_re", "gram_im"};
    return keys;
}

void apply_family(FilmModel& film, const std::string& prefix, bool diagonal,
                  const std::map<std::string, std::string>& kv) {
    ResonanceFamily* f = family_slot(film, diagonal);
    auto get = [&](const std::string& suffix) -> const std::string* {
        const auto it = kv.find(prefix + suffix);
        return it == kv.end() ? nullptr : &it->second;
    };
    if (!f) {
        const bool any = get("_lambda0_nm") || get("_width_nm") || get("_amplitude_re") ||
                         get("_amplitude_im") || get("_phase_deg");
        if (any) throw ConfigError("config: '" + prefix + "' keys given but the family is disabled");
        return;
    }
    if (auto v = get("_lambda0_nm")) f->lambda0_nm = parse_number(prefix + "_lambda0_nm", *v);
    if (auto v = get("_width_nm")) f->width_nm = parse_number(prefix + "_width_nm", *v);
    if (auto v = get("_amplitude_re")) f->amplitude.real(parse_number(prefix + "_amplitude_re", *v));
    if (auto v = get("_amplitude_im")) f->amplitude.imag(parse_number(prefix + "_amplitude_im", *v));
    if (auto v = get("_phase_deg")) f->phase_rad = parse_number(prefix + "_phase_deg", *v) * kDeg;
}

}  // namespace

std::string to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::spectrum: return "spectrum";
        case ScenarioKind::visibility_sweep: return "visibility_sweep";
        case ScenarioKind::polmap: return "polmap";
        case ScenarioKind::channel: return "channel";
    }
    return "visibility_sweep";
}

ScenarioKind parse_scenario_kind(const std::string& s) {
    for (auto k : {ScenarioKind::spectrum, ScenarioKind::visibility_sweep, ScenarioKind::polmap,
                   ScenarioKind::channel}) {
        if (to_string(k) == s) return k;
    }
    throw ConfigError("config: unknown scenario '" + s + "'");
}

std::vector<double> Range::values() const {
    std::vector<double> out;
    const double tol = std::abs(step) * 1e-9;
    for (long i = 0;; ++i) {
        const double v = start + static_cast<double>(i) * step;
        if (v > stop + tol) break;
        out.push_back(std::min(v, stop));
    }
    return out;
}

ScenarioConfig::ScenarioConfig() {
    for (int t = 0; t <= 6; ++t) tilts_rad.push_back(t * kDeg);
    tilt_azimuth_rad = 45.0 * kDeg;
    beta2_rad = {0.0, 45.0 * kDeg};
}

GramMatrix ScenarioConfig::gram() const {
    switch (gram_kind) {
        case GramKind::all_ones: return GramMatrix::all_ones();
        case GramKind::identity: return GramMatrix::identity();
        case GramKind::explicit_entries: return GramMatrix{gram_entries};
    }
    return GramMatrix::all_ones();
}

void ScenarioConfig::validate() const {
    auto check_range = [](const Range& r, const char* what) {
        if (!(r.step > 0.0) || !(r.stop >= r.start)) {
            throw ConfigError(std::string("config: ") + what + " range must be ordered with a positive step");
        }
    };
    check_range(spectrum_lambda, "wavelength");
    check_range(semiaperture_deg, "semiaperture");
    if (!(spectrum_lambda.start > 0.0)) throw ConfigError("config: wavelengths must be positive");
    if (!(semiaperture_deg.start >= 0.0)) throw ConfigError("config: semiaperture must be nonnegative");
    if (tilts_rad.empty() || beta2_rad.empty() || sweep_wavelengths_nm.empty()) {
        throw ConfigError("config: tilt, beta2 and wavelength lists must be nonempty");
    }
    if (!std::is_sorted(tilts_rad.begin(), tilts_rad.end())) throw ConfigError("config: tilts must be ordered");
    for (double t : tilts_rad) {
        if (t < 0.0) throw ConfigError("config: tilts must be nonnegative");
    }
    for (double l : sweep_wavelengths_nm) {
        if (!(l > 0.0)) throw ConfigError("config: wavelengths must be positive");
    }
    if (quadrature.cells < 1 || quadrature.order < 1 || quadrature.boundary_order < 1) {
        throw ConfigError("config: quadrature sizes must be positive");
    }
    if (refine < 0 || refine > 4) throw ConfigError("config: quad_refine must lie in [0, 4]");
    if (grid.points < 1) throw ConfigError("config: map_points must be positive");
    if (grid.half_angle_rad && !(*grid.half_angle_rad > 0.0)) {
        throw ConfigError("config: map_half_extent_deg must be positive");
    }
    if (iris_fraction && !(*iris_fraction > 0.0 && *iris_fraction <= 1.0)) {
        throw ConfigError("config: iris_fraction must lie in (0, 1]");
    }
    if (output_dir.empty()) throw ConfigError("config: output_dir must not be empty");
    try {
        setup.validate();
        SetupParams widest = setup;
        widest.semiaperture_rad = semiaperture_deg.stop * kDeg;
        widest.validate();
        if (!t_matrix.finite()) throw DomainError("t_matrix has non-finite entries");
        gram().validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

void ScenarioConfig::load_film() {
    if (!film_table) return;
    FilmModel tab = load_tabulated(*film_table);
    tab.thickness_nm = setup.film.thickness_nm;
    tab.hole_diameter_nm = setup.film.hole_diameter_nm;
    setup.film = std::move(tab);
}

bool ScenarioConfig::operator==(const ScenarioConfig& o) const {
    return serialize_config(*this) == serialize_config(o) && setup.film.is_tabulated() == o.setup.film.is_tabulated();
}

ScenarioConfig parse_config(const std::string& content) {
    boost::property_tree::ptree tree;
    try {
        std::istringstream in(content);
        boost::property_tree::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
    }

    std::map<std::string, std::string> kv;
    for (const auto& [key, node] : tree) {
        if (!node.empty()) throw ConfigError("config: sections are not supported ('[" + key + "]')");
        if (!known_keys().count(key)) throw ConfigError("config: unknown key '" + key + "'");
        kv[key] = trim(node.data());
    }
    auto has = [&](const char* k) { return kv.count(k) > 0; };
    auto num = [&](const char* k) { return parse_number(k, kv.at(k)); };

    ScenarioConfig cfg;
    if (has("scenario")) cfg.kind = parse_scenario_kind(kv.at("scenario"));

    SetupParams& s = cfg.setup;
    if (has("wavelength_nm")) s.lambda_nm = num("wavelength_nm");
    if (has("focal_length_mm")) s.focal_length_nm = num("focal_length_mm") * kMm;
    if (has("substrate_index")) s.substrate_index = num("substrate_index");
    if (has("substrate_thickness_mm")) s.substrate_thickness_nm = num("substrate_thickness_mm") * kMm;
    if (has("semiaperture_deg")) s.semiaperture_rad = num("semiaperture_deg") * kDeg;

    FilmModel& film = s.film;
    if (has("period_nm")) film.period_nm = num("period_nm");
    if (has("direct_amplitude_re")) film.direct_amplitude.real(num("direct_amplitude_re"));
    if (has("direct_amplitude_im")) film.direct_amplitude.imag(num("direct_amplitude_im"));
    if (has("film_thickness_nm")) film.thickness_nm = num("film_thickness_nm");
    if (has("hole_diameter_nm")) film.hole_diameter_nm = num("hole_diameter_nm");
    if (has("families")) {
        const FilmModel def = FilmModel::calibrated();
        std::vector<ResonanceFamily> fams;
        std::stringstream ss(kv.at("families"));
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item == "diagonal") {
                fams.push_back(*family_slot(def, true));
            } else if (item == "axial") {
                fams.push_back(*family_slot(def, false));
            } else if (item == "none" || item.empty()) {
            } else {
                throw ConfigError("config: unknown resonance family '" + item + "'");
            }
        }
        film.families = std::move(fams);
    }
    apply_family(film, "diagonal", true, kv);
    apply_family(film, "axial", false, kv);
    if (has("film_table")) cfg.film_table = kv.at("film_table");

    if (has("quad_cells")) cfg.quadrature.cells = parse_int("quad_cells", kv.at("quad_cells"));
    if (has("quad_order")) cfg.quadrature.order = parse_int("quad_order", kv.at("quad_order"));
    if (has("quad_boundary_order")) {
        cfg.quadrature.boundary_order = parse_int("quad_boundary_order", kv.at("quad_boundary_order"));
    }
    if (has("quad_refine")) cfg.refine = parse_int("quad_refine", kv.at("quad_refine"));
    if (has("output_dir")) cfg.output_dir = kv.at("output_dir");

    if (has("lambda_min_nm")) cfg.spectrum_lambda.start = num("lambda_min_nm");
    if (has("lambda_max_nm")) cfg.spectrum_lambda.stop = num("lambda_max_nm");
    if (has("lambda_step_nm")) cfg.spectrum_lambda.step = num("lambda_step_nm");
    if (has("tilts_deg")) {
        cfg.tilts_rad.clear();
        for (double t : parse_list("tilts_deg", kv.at("tilts_deg"))) cfg.tilts_rad.push_back(t * kDeg);
    }
    if (has("tilt_azimuth_deg")) cfg.tilt_azimuth_rad = num("tilt_azimuth_deg") * kDeg;

    if (has("semiaperture_min_deg")) cfg.semiaperture_deg.start = num("semiaperture_min_deg");
    if (has("semiaperture_max_deg")) cfg.semiaperture_deg.stop = num("semiaperture_max_deg");
    if (has("semiaperture_step_deg")) cfg.semiaperture_deg.step = num("semiaperture_step_deg");
    if (has("beta2_deg")) {
        cfg.beta2_rad.clear();
        for (double b : parse_list("beta2_deg", kv.at("beta2_deg"))) cfg.beta2_rad.push_back(b * kDeg);
    }
    if (has("wavelengths_nm")) cfg.sweep_wavelengths_nm = parse_list("wavelengths_nm", kv.at("wavelengths_nm"));

    if (has("input_polarization_deg")) cfg.input_polarization_rad = num("input_polarization_deg") * kDeg;
    if (has("map_points")) cfg.grid.points = parse_int("map_points", kv.at("map_points"));
    if (has("map_half_extent_deg") && kv.at("map_half_extent_deg") != "auto") {
        cfg.grid.half_angle_rad = num("map_half_extent_deg") * kDeg;
    }
    if (has("iris_fraction") && kv.at("iris_fraction") != "none") cfg.iris_fraction = num("iris_fraction");

    if (has("t_matrix")) {
        const auto v = parse_list("t_matrix", kv.at("t_matrix"));
        if (v.size() != 8) throw ConfigError("config: t_matrix expects 8 numbers (re/im of xx, xy, yx, yy)");
        cfg.t_matrix = {{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]}};
    }
    if (has("gram")) {
        const std::string& g = kv.at("gram");
        if (g == "ones") cfg.gram_kind = GramKind::all_ones;
        else if (g == "identity") cfg.gram_kind = GramKind::identity;
        else if (g == "explicit") cfg.gram_kind = GramKind::explicit_entries;
        else throw ConfigError("config: gram must be ones, identity or explicit");
    }
    if (cfg.gram_kind == GramKind::explicit_entries) {
        if (!has("gram_re")) throw ConfigError("config: gram = explicit requires gram_re");
        const auto re = parse_list("gram_re", kv.at("gram_re"));
        const auto im = has("gram_im") ? parse_list("gram_im", kv.at("gram_im")) : std::vector<double>(16, 0.0);
        if (re.size() != 16 || im.size() != 16) throw ConfigError("config: gram_re/gram_im expect 16 numbers");
        for (int i = 0; i < 16; ++i) cfg.gram_entries(i / 4, i % 4) = {re[i], im[i]};
    } else if (has("gram_re") || has("gram_im")) {
        throw ConfigError("config: gram_re/gram_im require gram = explicit");
    }

    cfg.validate();
    return cfg;
}

std::string serialize_config(const ScenarioConfig& cfg) {
    std::ostringstream o;
    const SetupParams& s = cfg.setup;
    const FilmModel& film = s.film;
    o << "scenario = " << to_string(cfg.kind) << "\n";
    o << "wavelength_nm = " << text(s.lambda_nm) << "\n";
    o << "focal_length_mm = " << exact_text(s.focal_length_nm, kMm) << "\n";
    o << "substrate_index = " << text(s.substrate_index) << "\n";
    o << "substrate_thickness_mm = " << exact_text(s.substrate_thickness_nm, kMm) << "\n";
    o << "semiaperture_deg = " << exact_text(s.semiaperture_rad, kDeg) << "\n";
    o << "period_nm = " << text(film.period_nm) << "\n";
    o << "direct_amplitude_re = " << text(film.direct_amplitude.real()) << "\n";
    o << "direct_amplitude_im = " << text(film.direct_amplitude.imag()) << "\n";
    o << "film_thickness_nm = " << text(film.thickness_nm) << "\n";
    o << "hole_diameter_nm = " << text(film.hole_diameter_nm) << "\n";
    if (cfg.film_table) {
        o << "film_table = " << *cfg.film_table << "\n";
    } else {
        std::string names;
        for (bool diag : {true, false}) {
            const ResonanceFamily* f = family_slot(film, diag);
            if (!f) continue;
            const std::string p = diag ? "diagonal" : "axial";
            names += (names.empty() ? "" : ",") + p;
        }
        o << "families = " << (names.empty() ? "none" : names) << "\n";
        for (bool diag : {true, false}) {
            const ResonanceFamily* f = family_slot(film, diag);
            if (!f) continue;
            const std::string p = diag ? "diagonal" : "axial";
            o << p << "_lambda0_nm = " << text(f->lambda0_nm) << "\n";
            o << p << "_width_nm = " << text(f->width_nm) << "\n";
            o << p << "_amplitude_re = " << text(f->amplitude.real()) << "\n";
            o << p << "_amplitude_im = " << text(f->amplitude.imag()) << "\n";
            o << p << "_phase_deg = " << exact_text(f->phase_rad, kDeg) << "\n";
        }
    }
    o << "quad_cells = " << cfg.quadrature.cells << "\n";
    o << "quad_order = " << cfg.quadrature.order << "\n";
    o << "quad_boundary_order = " << cfg.quadrature.boundary_order << "\n";
    o << "quad_refine = " << cfg.refine << "\n";
    o << "output_dir = " << cfg.output_dir << "\n";
    o << "lambda_min_nm = " << text(cfg.spectrum_lambda.start) << "\n";
    o << "lambda_max_nm = " << text(cfg.spectrum_lambda.stop) << "\n";
    o << "lambda_step_nm = " << text(cfg.spectrum_lambda.step) << "\n";
    o << "tilts_deg = " << list_text(cfg.tilts_rad, kDeg) << "\n";
    o << "tilt_azimuth_deg = " << exact_text(cfg.tilt_azimuth_rad, kDeg) << "\n";
    o << "semiaperture_min_deg = " << text(cfg.semiaperture_deg.start) << "\n";
    o << "semiaperture_max_deg = " << text(cfg.semiaperture_deg.stop) << "\n";
    o << "semiaperture_step_deg = " << text(cfg.semiaperture_deg.step) << "\n";
    o << "beta2_deg = " << list_text(cfg.beta2_rad, kDeg) << "\n";
    o << "wavelengths_nm = " << list_text(cfg.sweep_wavelengths_nm, 1.0) << "\n";
    o << "input_polarization_deg = " << exact_text(cfg.input_polarization_rad, kDeg) << "\n";
    o << "map_points = " << cfg.grid.points << "\n";
    o << "map_half_extent_deg = " << (cfg.grid.half_angle_rad ? exact_text(*cfg.grid.half_angle_rad, kDeg) : "auto")
      << "\n";
    o << "iris_fraction = " << (cfg.iris_fraction ? text(*cfg.iris_fraction) : "none") << "\n";
    const JonesMatrix& t = cfg.t_matrix;
    o << "t_matrix = " << list_text({t.xx.real(), t.xx.imag(), t.xy.real(), t.xy.imag(), t.yx.real(), t.yx.imag(),
                                     t.yy.real(), t.yy.imag()},
                                    1.0)
      << "\n";
    o << "gram = " << gram_kind_text(cfg.gram_kind) << "\n";
    if (cfg.gram_kind == GramKind::explicit_entries) {
        std::vector<double> re, im;
        for (int i = 0; i < 16; ++i) {
            re.push_back(cfg.gram_entries(i / 4, i % 4).real());
            im.push_back(cfg.gram_entries(i / 4, i % 4).imag());
        }
        o << "gram_re = " << list_text(re, 1.0) << "\n";
        o << "gram_im = " << list_text(im, 1.0) << "\n";
    }
    return o.str();
}

namespace {

const std::map<std::string, std::string>& presets() {
    static const std::map<std::string, std::string> p = {
        {"paper_defaults",
         "# Setup of the experiment: f = 15 mm, n = 1.52, Delta = 0.5 mm, d = 700 nm\n"
         "scenario = visibility_sweep\n"
         "wavelength_nm = 797\n"
         "focal_length_mm = 15\n"
         "substrate_index = 1.52\n"
         "substrate_thickness_mm = 0.5\n"
         "semiaperture_deg = 8\n"
         "period_nm = 700\n"
         "wavelengths_nm = 797,728\n"
         "beta2_deg = 0,45\n"
         "output_dir = out/paper_defaults\n"},
        {"fig2",
         "# Transmission spectra of the film under tilt around the diagonal\n"
         "scenario = spectrum\n"
         "lambda_min_nm = 650\n"
         "lambda_max_nm = 900\n"
         "lambda_step_nm = 0.5\n"
         "tilts_deg = 0,1,2,3,4,5,6\n"
         "tilt_azimuth_deg = 45\n"
         "output_dir = out/fig2\n"},
        {"fig3",
         "# Visibility against telescope semiaperture\n"
         "scenario = visibility_sweep\n"
         "semiaperture_min_deg = 0\n"
         "semiaperture_max_deg = 10\n"
         "semiaperture_step_deg = 0.5\n"
         "beta2_deg = 0,45\n"
         "wavelengths_nm = 797,728\n"
         "output_dir = out/fig3\n"},
        {"fig4",
         "# Output polarization map, -45 deg input, 8 deg semiaperture\n"
         "scenario = polmap\n"
         "wavelength_nm = 797\n"
         "semiaperture_deg = 8\n"
         "input_polarization_deg = -45\n"
         "map_points = 101\n"
         "map_half_extent_deg = 0.1\n"
         "output_dir = out/fig4\n"},
        {"fig4_90",
         "# Output polarization map, 90 deg input, 8 deg semiaperture\n"
         "scenario = polmap\n"
         "wavelength_nm = 797\n"
         "semiaperture_deg = 8\n"
         "input_polarization_deg = 90\n"
         "map_points = 101\n"
         "map_half_extent_deg = 0.1\n"
         "output_dir = out/fig4_90\n"},
        {"case_i",
         "# Orthogonal solid states: which-way information\n"
         "scenario = channel\n"
         "t_matrix = 1,0,0,0,0,0,1,0\n"
         "gram = identity\n"
         "output_dir = out/case_i\n"},
        {"case_ii",
         "# Identical solid states\n"
         "scenario = channel\n"
         "t_matrix = 1,0,0,0,0,0,1,0\n"
         "gram = ones\n"
         "output_dir = out/case_ii\n"},
    };
    return p;
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [k, v] : presets()) names.push_back(k);
    return names;
}

std::optional<std::string> preset_text(const std::string& name) {
    const auto it = presets().find(name);
    if (it == presets().end()) return std::nullopt;
    return it->second;
}

ScenarioConfig load_config(const std::string& name_or_path) {
    namespace fs = std::filesystem;
    if (auto t = preset_text(name_or_path)) {
        ScenarioConfig cfg = parse_config(*t);
        cfg.load_film();
        return cfg;
    }
    std::ifstream in(name_or_path);
    if (!in) throw ConfigError("config: no preset or readable file named '" + name_or_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    ScenarioConfig cfg = parse_config(buf.str());
    if (cfg.film_table) {
        fs::path p(*cfg.film_table);
        if (p.is_relative()) cfg.film_table = (fs::path(name_or_path).parent_path() / p).string();
    }
    cfg.load_film();
    return cfg;
}

}  // namespace pbs
