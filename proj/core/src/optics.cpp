#include "pbs/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pbs/error.hpp"
#include "pbs/parallel.hpp"

namespace pbs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxParaxialAngle = 0.3;

cplx expi(double phase) { return {std::cos(phase), std::sin(phase)}; }

std::string describe(const JonesMatrix& m) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "[[%.9e%+.9ei, %.9e%+.9ei], [%.9e%+.9ei, %.9e%+.9ei]]",
                  m.xx.real(), m.xx.imag(), m.xy.real(), m.xy.imag(), m.yx.real(), m.yx.imag(),
                  m.yy.real(), m.yy.imag());
    return buf;
}

}  // namespace

double SetupParams::wavenumber() const { return 2.0 * kPi / lambda_nm; }

double SetupParams::magnification() const {
    return substrate_index * focal_length_nm / ((substrate_index - 1.0) * substrate_thickness_nm);
}

double SetupParams::phase_coefficient() const {
    return (substrate_index - 1.0) * substrate_thickness_nm / (2.0 * substrate_index * wavenumber());
}

double SetupParams::aperture_radius() const { return wavenumber() * std::sin(semiaperture_rad); }

double SetupParams::default_detector_half_angle() const { return semiaperture_rad / magnification(); }

void SetupParams::validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(lambda_nm)) throw DomainError("setup: wavelength must be positive");
    if (!positive(focal_length_nm)) throw DomainError("setup: focal length must be positive");
    if (!positive(substrate_thickness_nm)) throw DomainError("setup: substrate thickness must be positive");
    if (!(std::isfinite(substrate_index) && substrate_index > 1.0)) {
        throw DomainError("setup: substrate index must exceed 1");
    }
    if (!(semiaperture_rad >= 0.0 && semiaperture_rad <= kMaxParaxialAngle)) {
        throw DomainError("setup: semiaperture must lie in [0, 0.3] rad");
    }
    film.validate();
}

double film_angle_from_detector_angle(double theta3_rad, const SetupParams& setup) {
    const double s = setup.magnification() * std::sin(theta3_rad);
    if (std::abs(s) > 1.0) throw DomainError("detector angle maps beyond grazing incidence");
    return std::asin(s);
}

JonesMatrix lens_matrix(Vec2 q_out, Vec2 q_in, const SetupParams& setup) {
    const double k = setup.wavenumber();
    const double f = setup.focal_length_nm;
    const cplx pre = f / (2.0 * kPi * k * cplx(0.0, 1.0));
    const cplx phase = expi(f / (2.0 * k) * (q_out - q_in).norm2());
    return rotation(q_out.azimuth()) * rotation(-q_in.azimuth()) * (pre * phase);
}

cplx propagation_phase(Vec2 q, double z_nm, const SetupParams& setup) {
    return expi(-z_nm * q.norm2() / (2.0 * setup.wavenumber()));
}

JonesMatrix to_mode_basis(const JonesMatrix& lab, Vec2 q3) { return rotation(q3.azimuth()) * lab; }

cplx fresnel_disc_integral(double a, double radius, Vec2 u) {
    const double r2 = radius * radius;
    const double u2 = u.norm2();
    if (!(u2 < r2)) throw DomainError("fresnel_disc_integral: centre must lie inside the disc");
    const cplx ia{0.0, a};
    if (u2 == 0.0) return kPi * (expi(a * r2) - 1.0) / ia;

    // Radial integral done analytically along each ray from u; the remaining
    // periodic integrand in theta converges geometrically under the
    // trapezoidal rule.
    auto ray = [&](double theta) {
        const double p = u.x * std::cos(theta) + u.y * std::sin(theta);
        const double rho = -p + std::sqrt(p * p + r2 - u2);
        return (expi(a * rho * rho) - 1.0) / (2.0 * ia);
    };
    const double scale = kPi * r2;
    int n = 64;
    cplx sum{0.0};
    for (int i = 0; i < n; ++i) sum += ray(2.0 * kPi * i / n);
    cplx prev = sum * (2.0 * kPi / n);
    while (n < (1 << 22)) {
        cplx extra{0.0};
        for (int i = 0; i < n; ++i) extra += ray(2.0 * kPi * (i + 0.5) / n);
        sum += extra;
        n *= 2;
        const cplx cur = sum * (2.0 * kPi / n);
        if (std::abs(cur - prev) <= 1e-15 * scale) return cur;
        prev = cur;
    }
    throw ConvergenceError("fresnel_disc_integral: trapezoidal rule did not converge");
}

TelescopeKernel::TelescopeKernel(const SetupParams& setup, QuadratureOptions options)
    : setup_(setup),
      rule_(setup.aperture_radius(), options),
      a_(setup.phase_coefficient()),
      m_(setup.magnification()) {
    setup_.validate();
    const auto& lat = rule_.lattice();
    const auto& w = rule_.lattice_weights();
    const auto& rows = rule_.interior_rows();

    row_offset_.resize(rows.size() + 1, 0);
    for (std::size_t j = 0; j < rows.size(); ++j) {
        row_offset_[j + 1] = row_offset_[j] + (rows[j].end - rows[j].begin);
    }
    interior_.resize(row_offset_.back());
    const double lambda = setup_.lambda_nm;
    const FilmModel& film = setup_.film;
    parallel_for(rows.size(), [&](std::size_t j) {
        const double y = lat[j];
        for (std::size_t i = rows[j].begin; i < rows[j].end; ++i) {
            const Vec2 q{lat[i], y};
            interior_[row_offset_[j] + (i - rows[j].begin)] =
                film_matrix(film, q, lambda) * (w[i] * w[j] * expi(a_ * q.norm2()));
        }
    });

    const auto& nodes = rule_.boundary_nodes();
    boundary_.resize(nodes.size());
    constexpr std::size_t chunk = 256;
    parallel_for((nodes.size() + chunk - 1) / chunk, [&](std::size_t c) {
        const std::size_t end = std::min(nodes.size(), (c + 1) * chunk);
        for (std::size_t b = c * chunk; b < end; ++b) {
            const Vec2 q = nodes[b].q;
            boundary_[b] = film_matrix(film, q, lambda) * (nodes[b].weight * expi(a_ * q.norm2()));
        }
    });
}

JonesMatrix TelescopeKernel::operator()(Vec2 q3) const {
    const Vec2 u = q3 * m_;
    const double c = 2.0 * a_;
    const auto& lat = rule_.lattice();
    const auto& rows = rule_.interior_rows();

    std::vector<cplx> ex(lat.size());
    for (std::size_t i = 0; i < lat.size(); ++i) ex[i] = expi(-c * u.x * lat[i]);

    JonesMatrix total;
    for (std::size_t j = 0; j < rows.size(); ++j) {
        if (rows[j].begin == rows[j].end) continue;
        JonesMatrix row;
        const JonesMatrix* k = &interior_[row_offset_[j]];
        for (std::size_t i = rows[j].begin; i < rows[j].end; ++i, ++k) row += *k * ex[i];
        total += row * expi(-c * u.y * lat[j]);
    }
    const auto& nodes = rule_.boundary_nodes();
    for (std::size_t b = 0; b < nodes.size(); ++b) {
        total += boundary_[b] * expi(-c * u.dot(nodes[b].q));
    }
    return total * expi(a_ * u.norm2());
}

std::vector<JonesMatrix> TelescopeKernel::on_grid(const std::vector<double>& axis) const {
    const std::size_t n = axis.size();
    if (n == 0) return {};
    const double step = n > 1 ? axis[1] - axis[0] : 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(axis[i] - axis[i - 1] - step) > 1e-9 * std::abs(step)) {
            throw DomainError("TelescopeKernel::on_grid: axis must be uniformly spaced");
        }
    }

    const double c = 2.0 * a_ * m_;
    const auto& lat = rule_.lattice();
    const auto& rows = rule_.interior_rows();
    const auto& nodes = rule_.boundary_nodes();
    const std::size_t nl = lat.size();

    // exp(-i c q3x x) for every (grid column, lattice column).
    std::vector<cplx> ex(n * nl);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < nl; ++i) ex[k * nl + i] = expi(-c * axis[k] * lat[i]);
    }
    // Boundary x factors advance geometrically along the uniform axis.
    std::vector<cplx> z0(nodes.size()), ratio(nodes.size());
    for (std::size_t b = 0; b < nodes.size(); ++b) {
        z0[b] = expi(-c * axis[0] * nodes[b].q.x);
        ratio[b] = expi(-c * step * nodes[b].q.x);
    }

    std::vector<JonesMatrix> out(n * n);
    parallel_for(n, [&](std::size_t iy) {
        const double q3y = axis[iy];
        std::vector<JonesMatrix> h(nl);
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (rows[j].begin == rows[j].end) continue;
            const cplx ey = expi(-c * q3y * lat[j]);
            const JonesMatrix* k = &interior_[row_offset_[j]];
            for (std::size_t i = rows[j].begin; i < rows[j].end; ++i, ++k) h[i] += *k * ey;
        }
        std::vector<JonesMatrix> acc(n);
        for (std::size_t b = 0; b < nodes.size(); ++b) {
            const JonesMatrix by = boundary_[b] * expi(-c * q3y * nodes[b].q.y);
            cplx z = z0[b];
            for (std::size_t ix = 0; ix < n; ++ix) {
                acc[ix] += by * z;
                z *= ratio[b];
            }
        }
        for (std::size_t ix = 0; ix < n; ++ix) {
            JonesMatrix t;
            const cplx* e = &ex[ix * nl];
            for (std::size_t i = 0; i < nl; ++i) t += h[i] * e[i];
            t += acc[ix];
            const double u2 = (axis[ix] * axis[ix] + q3y * q3y) * m_ * m_;
            out[iy * n + ix] = t * expi(a_ * u2);
        }
    });
    return out;
}

JonesMatrix telescope_matrix(Vec2 q3, const SetupParams& setup, const TelescopeOptions& options) {
    QuadratureOptions quad = options.quadrature;
    JonesMatrix prev = TelescopeKernel(setup, quad)(q3);
    const int refinements = std::max(1, options.max_refinements);
    for (int r = 1;; ++r) {
        quad = quad.refined(1);
        const JonesMatrix cur = TelescopeKernel(setup, quad)(q3);
        const double change = (cur - prev).max_abs();
        if (change <= options.convergence_tol * cur.max_abs()) return cur;
        if (r == refinements) {
            throw ConvergenceError("telescope_matrix: quadrature not converged at " +
                                   std::to_string(options.quadrature.refined(r - 1).cells) + " -> " +
                                   std::to_string(quad.cells) + " cells: " + describe(prev) +
                                   " vs " + describe(cur));
        }
        prev = cur;
    }
}

JonesMatrix telescope_matrix_sp(Vec2 q3, const SetupParams& setup, double margin) {
    setup.validate();
    const Vec2 u = setup.stationary_point(q3);
    const double r = setup.aperture_radius();
    if (!(u.norm() <= (1.0 - margin) * r) || r == 0.0) {
        throw DomainError("telescope_matrix_sp: stationary point outside or too close to the aperture edge");
    }
    return film_matrix(setup.film, u, setup.lambda_nm) *
           fresnel_disc_integral(setup.phase_coefficient(), r, u);
}

std::optional<PolarizationEllipse> FieldMap::ellipse(std::size_t idx) const {
    if (!(field[idx].intensity() > 0.0)) return std::nullopt;
    return ellipse_of(field[idx]);
}

std::vector<double> detector_axis(const SetupParams& setup, const GridSpec& grid) {
    if (grid.points < 1) throw DomainError("grid: at least one point per side required");
    const double half = grid.half_angle_rad.value_or(setup.default_detector_half_angle());
    if (!(half >= 0.0) || !std::isfinite(half)) throw DomainError("grid: invalid half-angle");
    if (film_angle_from_detector_angle(half, setup) > kMaxParaxialAngle) {
        throw DomainError("grid: detector extent maps beyond the paraxial range on the film");
    }
    const double qhalf = setup.wavenumber() * std::sin(half);
    const auto n = static_cast<std::size_t>(grid.points);
    std::vector<double> axis(n, 0.0);
    if (n == 1) return axis;
    const double mid = 0.5 * static_cast<double>(n - 1);
    const double step = qhalf / mid;
    for (std::size_t i = 0; i < n; ++i) axis[i] = (static_cast<double>(i) - mid) * step;
    return axis;
}

std::vector<FieldMap> field_maps(const std::vector<double>& input_angles_rad, const GridSpec& grid,
                                 const TelescopeKernel& kernel) {
    const SetupParams& setup = kernel.setup();
    FieldMap base;
    base.axis = detector_axis(setup, grid);
    base.half_angle_rad = grid.half_angle_rad.value_or(setup.default_detector_half_angle());
    base.wavelength_nm = setup.lambda_nm;
    const double k = setup.wavenumber();
    for (double q : base.axis) base.axis_angle.push_back(std::asin(q / k));

    const auto t = kernel.on_grid(base.axis);
    std::vector<FieldMap> maps;
    for (double angle : input_angles_rad) {
        FieldMap map = base;
        map.input = JonesVector::linear(angle);
        map.input_angle_rad = angle;
        map.field.reserve(t.size());
        for (const auto& m : t) map.field.push_back(m * map.input);
        maps.push_back(std::move(map));
    }
    return maps;
}

FieldMap field_map(double input_angle_rad, const GridSpec& grid, const TelescopeKernel& kernel) {
    return std::move(field_maps({input_angle_rad}, grid, kernel).front());
}

FieldMap field_map(double input_angle_rad, const GridSpec& grid, const SetupParams& setup,
                   const QuadratureOptions& options) {
    return field_map(input_angle_rad, grid, TelescopeKernel(setup, options));
}

}  // namespace pbs
