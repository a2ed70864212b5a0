#include "pbs/film.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "pbs/error.hpp"

namespace pbs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kParaxialFraction = 0.3;

bool contains(const std::vector<LatticeOrder>& orders, LatticeOrder o) {
    return std::find(orders.begin(), orders.end(), o) != orders.end();
}

// Images of (m1, m2) under the eight square-lattice symmetries.
std::array<LatticeOrder, 8> orbit(LatticeOrder o) {
    return {{{o.m1, o.m2}, {-o.m1, o.m2}, {o.m1, -o.m2}, {-o.m1, -o.m2},
             {o.m2, o.m1}, {-o.m2, o.m1}, {o.m2, -o.m1}, {-o.m2, -o.m1}}};
}

void check_paraxial(Vec2 q, double lambda_nm, const char* what) {
    if (!std::isfinite(q.x) || !std::isfinite(q.y)) {
        throw DomainError(std::string(what) + ": non-finite wavevector");
    }
    if (q.norm() > kParaxialFraction * kTwoPi / lambda_nm) {
        throw DomainError(std::string(what) + ": wavevector outside the paraxial range");
    }
}

// Locates x on a sorted axis. Returns the lower index and the fractional
// position in [0, 1]. Singleton axes require an exact match.
std::pair<std::size_t, double> locate(const std::vector<double>& axis, double x,
                                      const char* name) {
    if (axis.size() == 1) {
        const double tol = 1e-12 * std::max(1.0, std::abs(axis[0]));
        if (std::abs(x - axis[0]) <= tol) return {0, 0.0};
        throw DomainError(std::string("film table: ") + name + " outside tabulated grid");
    }
    if (x < axis.front() || x > axis.back()) {
        throw DomainError(std::string("film table: ") + name + " outside tabulated grid");
    }
    auto it = std::upper_bound(axis.begin(), axis.end(), x);
    std::size_t hi = static_cast<std::size_t>(it - axis.begin());
    if (hi >= axis.size()) hi = axis.size() - 1;
    const std::size_t lo = hi - 1;
    const double t = (x - axis[lo]) / (axis[hi] - axis[lo]);
    return {lo, t};
}

JonesMatrix interpolate(const FilmTable& t, Vec2 q, double lambda_nm) {
    const auto [il, fl] = locate(t.lambda_nm, lambda_nm, "lambda");
    const auto [ix, fx] = locate(t.qx, q.x, "qx");
    const auto [iy, fy] = locate(t.qy, q.y, "qy");

    JonesMatrix acc;
    for (int dl = 0; dl < 2; ++dl) {
        const double wl = dl ? fl : 1.0 - fl;
        if (wl == 0.0) continue;
        for (int dx = 0; dx < 2; ++dx) {
            const double wx = dx ? fx : 1.0 - fx;
            if (wx == 0.0) continue;
            for (int dy = 0; dy < 2; ++dy) {
                const double wy = dy ? fy : 1.0 - fy;
                if (wy == 0.0) continue;
                acc += t.at(il + dl, ix + dx, iy + dy) * cplx(wl * wx * wy);
            }
        }
    }
    return acc;
}

JonesMatrix analytic(const FilmModel& m, Vec2 q, double lambda_nm) {
    JonesMatrix f = JonesMatrix::scalar(m.direct_amplitude);
    for (const auto& fam : m.families) {
        const double two_pi_neff = kTwoPi * fam.n_eff(m.period_nm);
        const cplx amp = fam.effective_amplitude();
        const cplx igamma{0.0, fam.width_nm};
        for (const auto& o : fam.orders) {
            const Vec2 k = q + reciprocal_vector(o, m.period_nm);
            const double kn = k.norm();
            const double lambda_g = two_pi_neff / kn;
            const cplx lorentz = igamma / (cplx(lambda_nm - lambda_g) + igamma);
            const Vec2 e = k * (1.0 / kn);
            f += JonesMatrix::dyad(e, e) * (amp * lorentz);
        }
    }
    return f;
}

double parse_double(std::string_view s, std::size_t line) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ConfigError("film table line " + std::to_string(line) + ": bad number '" +
                          std::string(s) + "'");
    }
    if (!std::isfinite(v)) {
        throw ConfigError("film table line " + std::to_string(line) + ": non-finite entry");
    }
    return v;
}

}  // namespace

Vec2 reciprocal_vector(LatticeOrder order, double period_nm) {
    const double g = kTwoPi / period_nm;
    return {g * order.m1, g * order.m2};
}

double ResonanceFamily::n_eff(double period_nm) const {
    const LatticeOrder o = orders.at(0);
    return lambda0_nm * std::hypot(o.m1, o.m2) / period_nm;
}

cplx ResonanceFamily::effective_amplitude() const {
    return phase_rad == 0.0 ? amplitude : amplitude * std::polar(1.0, phase_rad);
}

void ResonanceFamily::validate(double period_nm) const {
    if (orders.empty()) throw DomainError("resonance family: no orders");
    const int r2 = orders[0].m1 * orders[0].m1 + orders[0].m2 * orders[0].m2;
    if (r2 == 0) throw DomainError("resonance family: (0, 0) is not a surface-plasmon order");
    for (const auto& o : orders) {
        if (o.m1 * o.m1 + o.m2 * o.m2 != r2) {
            throw DomainError("resonance family: orders of different length");
        }
        for (const auto& img : orbit(o)) {
            if (!contains(orders, img)) {
                throw DomainError("resonance family: orders not closed under the point group");
            }
        }
    }
    if (!(lambda0_nm > 0.0)) throw DomainError("resonance family: lambda0 must be positive");
    if (!(width_nm > 0.0)) throw DomainError("resonance family: width must be positive");
    if (!(n_eff(period_nm) > 1.0)) throw DomainError("resonance family: n_eff must exceed 1");
}

ResonanceFamily ResonanceFamily::diagonal(double lambda0_nm, double width_nm, cplx amplitude) {
    return {{{1, 1}, {-1, 1}, {1, -1}, {-1, -1}}, lambda0_nm, width_nm, amplitude, 0.0};
}

ResonanceFamily ResonanceFamily::axial(double lambda0_nm, double width_nm, cplx amplitude) {
    return {{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, lambda0_nm, width_nm, amplitude, 0.0};
}

void FilmTable::validate() const {
    if (lambda_nm.empty() || qx.empty() || qy.empty()) throw ConfigError("film table: empty axis");
    for (const auto* axis : {&lambda_nm, &qx, &qy}) {
        if (!std::is_sorted(axis->begin(), axis->end()) ||
            std::adjacent_find(axis->begin(), axis->end()) != axis->end()) {
            throw ConfigError("film table: axis not strictly increasing");
        }
    }
    if (values.size() != lambda_nm.size() * qx.size() * qy.size()) {
        throw ConfigError("film table: grid is not rectangular");
    }
    for (const auto& v : values) {
        if (!v.finite()) throw ConfigError("film table: non-finite entry");
    }
}

void FilmModel::validate() const {
    if (!(period_nm > 0.0)) throw DomainError("film: period must be positive");
    if (table) {
        table->validate();
        return;
    }
    if (!std::isfinite(direct_amplitude.real()) || !std::isfinite(direct_amplitude.imag())) {
        throw DomainError("film: non-finite direct amplitude");
    }
    for (const auto& f : families) f.validate(period_nm);
}

double default_resonance_amplitude(double direct_amplitude, double peak_transmittance) {
    return 0.5 * (std::sqrt(peak_transmittance) - direct_amplitude);
}

FilmModel FilmModel::calibrated() {
    FilmModel m;
    m.period_nm = 700.0;
    m.direct_amplitude = kDefaultDirectAmplitude;
    const double a = default_resonance_amplitude(kDefaultDirectAmplitude);
    m.families = {ResonanceFamily::diagonal(797.0, kDefaultDiagonalWidth, a),
                  ResonanceFamily::axial(728.0, kDefaultAxialWidth, a)};
    return m;
}

double resonance_wavelength(const ResonanceFamily& family, LatticeOrder order, Vec2 q,
                            double period_nm) {
    check_paraxial(q, family.lambda0_nm, "resonance_wavelength");
    const Vec2 k = q + reciprocal_vector(order, period_nm);
    if (k.x == 0.0 && k.y == 0.0) {
        throw DomainError("resonance_wavelength: q + G = 0 (singular order)");
    }
    if (q.x == 0.0 && q.y == 0.0) {
        return family.n_eff(period_nm) * period_nm / std::hypot(order.m1, order.m2);
    }
    return kTwoPi * family.n_eff(period_nm) / k.norm();
}

JonesMatrix film_matrix(const FilmModel& model, Vec2 q, double lambda_nm) {
    if (!(lambda_nm > 0.0) || !std::isfinite(lambda_nm)) {
        throw DomainError("film_matrix: wavelength must be positive");
    }
    if (model.table) return interpolate(*model.table, q, lambda_nm);
    check_paraxial(q, lambda_nm, "film_matrix");
    return analytic(model, q, lambda_nm);
}

double transmittance(const FilmModel& model, Vec2 q, double lambda_nm, const JonesVector& pol) {
    return (film_matrix(model, q, lambda_nm) * pol).intensity();
}

FilmTable parse_film_table(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) break;
    }
    if (line != kFilmTableHeader) {
        throw ConfigError("film table: expected header '" + std::string(kFilmTableHeader) + "'");
    }

    struct Row {
        double qx, qy, lambda;
        JonesMatrix m;
    };
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::array<double, 11> v{};
        std::size_t start = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const std::size_t comma = line.find(',', start);
            const bool last = i + 1 == v.size();
            if (last != (comma == std::string::npos)) {
                throw ConfigError("film table line " + std::to_string(lineno) +
                                  ": expected 11 fields");
            }
            const std::size_t end = last ? line.size() : comma;
            v[i] = parse_double(std::string_view(line).substr(start, end - start), lineno);
            start = end + 1;
        }
        rows.push_back({v[0], v[1], v[2],
                        {{v[3], v[4]}, {v[5], v[6]}, {v[7], v[8]}, {v[9], v[10]}}});
    }
    if (rows.empty()) throw ConfigError("film table: no data rows");

    FilmTable t;
    auto collect = [&](auto proj) {
        std::vector<double> axis;
        for (const auto& r : rows) axis.push_back(proj(r));
        std::sort(axis.begin(), axis.end());
        axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
        return axis;
    };
    t.lambda_nm = collect([](const Row& r) { return r.lambda; });
    t.qx = collect([](const Row& r) { return r.qx; });
    t.qy = collect([](const Row& r) { return r.qy; });
    if (rows.size() != t.lambda_nm.size() * t.qx.size() * t.qy.size()) {
        throw ConfigError("film table: grid is not rectangular");
    }
    t.values.reserve(rows.size());
    std::size_t i = 0;
    for (double l : t.lambda_nm) {
        for (double x : t.qx) {
            for (double y : t.qy) {
                const Row& r = rows[i];
                if (r.lambda != l || r.qx != x || r.qy != y) {
                    throw ConfigError("film table: rows not sorted by (lambda, qx, qy) at data row " +
                                      std::to_string(i + 1));
                }
                t.values.push_back(r.m);
                ++i;
            }
        }
    }
    t.validate();
    return t;
}

void write_film_table(std::ostream& out, const FilmTable& t) {
    out << kFilmTableHeader << '\n';
    char buf[64];
    auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf << sep;
    };
    for (std::size_t il = 0; il < t.lambda_nm.size(); ++il) {
        for (std::size_t ix = 0; ix < t.qx.size(); ++ix) {
            for (std::size_t iy = 0; iy < t.qy.size(); ++iy) {
                const JonesMatrix& m = t.at(il, ix, iy);
                put(t.qx[ix], ',');
                put(t.qy[iy], ',');
                put(t.lambda_nm[il], ',');
                put(m.xx.real(), ',');
                put(m.xx.imag(), ',');
                put(m.xy.real(), ',');
                put(m.xy.imag(), ',');
                put(m.yx.real(), ',');
                put(m.yx.imag(), ',');
                put(m.yy.real(), ',');
                put(m.yy.imag(), '\n');
            }
        }
    }
}

FilmModel load_tabulated(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open film table '" + path.string() + "'");
    FilmModel m;
    m.families.clear();
    m.direct_amplitude = 0.0;
    m.table = parse_film_table(in);
    return m;
}

void save_tabulated(const FilmModel& model, const std::filesystem::path& path) {
    if (!model.table) throw DomainError("save_tabulated: model has no tabulated grid");
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write film table '" + path.string() + "'");
    write_film_table(out, *model.table);
}

}  // namespace pbs
