#pragma once

// Paraxial multimode propagation of photon 1 through the confocal telescope
// with the film at its focus.
//
// For a normally incident plane wave the telescope-plus-film matrix is
//
//   T(q3) = R(phi3) * Integral_{|q2| <= R} d^2q2
//           exp(i a |q2 - M q3|^2) R^-1(phi2) F(q2) R(phi2)
//
// with a = (n - 1) Delta / (2 n k), M = n f / ((n - 1) Delta), aperture
// radius R = k sin(semiaperture) and R(phi) = rotation(phi). F(q2) is the
// rotated-frame film matrix, so the sandwich is the lab-frame matrix
// F_lab(q2). The leading R(phi3) belongs to the rotated frame of mode q3.
// Observables here (polarizer projections, ellipses) are lab-frame
// quantities, so TelescopeKernel returns the lab-frame matrix and
// to_mode_basis() applies R(phi3) when the rotated-frame output is wanted.
// The global scalar of T is arbitrary; only scalar-invariant quantities are
// meaningful.

#include <optional>
#include <vector>

#include "pbs/film.hpp"
#include "pbs/jones.hpp"
#include "pbs/quadrature.hpp"

namespace pbs {

struct SetupParams {
    double lambda_nm = 797.0;
    double focal_length_nm = 15.0e6;
    double substrate_index = 1.52;
    double substrate_thickness_nm = 0.5e6;
    double semiaperture_rad = 0.13962634015954636;  // 8 degrees
    FilmModel film = FilmModel::calibrated();

    double wavenumber() const;       ///< k = 2 pi / lambda, nm^-1
    double magnification() const;    ///< n f / ((n - 1) Delta)
    double phase_coefficient() const;///< a = (n - 1) Delta / (2 n k), nm^2
    double aperture_radius() const;  ///< k sin(semiaperture), nm^-1
    /// Stationary point q2* = M q3.
    Vec2 stationary_point(Vec2 q3) const { return q3 * magnification(); }
    /// Default detector half-angle: semiaperture / M.
    double default_detector_half_angle() const;

    /// Throws DomainError for non-physical parameters.
    void validate() const;
};

/// Film-side angle reached through the stationary-phase mapping,
/// asin(M sin theta3).
double film_angle_from_detector_angle(double theta3_rad, const SetupParams& setup);

/// Thin-lens transfer matrix between modes q_in -> q_out:
/// f/(2 pi k i) exp(i f |q_out - q_in|^2 / 2k) R(phi_out) R^-1(phi_in).
JonesMatrix lens_matrix(Vec2 q_out, Vec2 q_in, const SetupParams& setup);

/// Paraxial free-propagation phase exp(-i z |q|^2 / (2k)) over distance z
/// (use z / n inside a medium of index n).
cplx propagation_phase(Vec2 q, double z_nm, const SetupParams& setup);

/// R(phi3) * lab: the output expressed in the rotated frame of mode q3.
JonesMatrix to_mode_basis(const JonesMatrix& lab, Vec2 q3);

/// Integral of exp(i a |q - u|^2) over the disc |q| <= R for |u| < R,
/// evaluated in polar coordinates centred on u (spectrally convergent).
cplx fresnel_disc_integral(double a, double radius, Vec2 u);

/// Precomputed integrand of the telescope integral for one setup and one
/// quadrature rule. Immutable after construction; safe to share.
class TelescopeKernel {
public:
    TelescopeKernel(const SetupParams& setup, QuadratureOptions options = {});

    const SetupParams& setup() const { return setup_; }
    const DiscQuadrature& rule() const { return rule_; }

    /// Lab-frame T(q3, 0).
    JonesMatrix operator()(Vec2 q3) const;

    /// T on the square grid axis x axis; result index = iy * n + ix.
    /// The axis must be uniformly spaced.
    std::vector<JonesMatrix> on_grid(const std::vector<double>& axis) const;

private:
    SetupParams setup_;
    DiscQuadrature rule_;
    double a_;
    double m_;
    std::vector<JonesMatrix> interior_;  // (row j, column i) -> w e^{ia q^2} F(q)
    std::vector<std::size_t> row_offset_;
    std::vector<JonesMatrix> boundary_;  // per boundary node
};

struct TelescopeOptions {
    QuadratureOptions quadrature{};
    double convergence_tol = 1e-4;  ///< relative to the largest entry
    int max_refinements = 2;        ///< refined evaluations allowed (at least one)
};

/// T(q3, 0) with a convergence check: the rule is refined (cell density
/// doubled) until two successive results agree to convergence_tol. Throws
/// ConvergenceError carrying both values otherwise.
JonesMatrix telescope_matrix(Vec2 q3, const SetupParams& setup, const TelescopeOptions& options = {});

/// Stationary-phase approximation: fresnel_disc_integral(a, R, M q3) * F(M q3).
/// Requires |M q3| <= (1 - margin) R; throws DomainError otherwise.
JonesMatrix telescope_matrix_sp(Vec2 q3, const SetupParams& setup, double margin = 0.05);

struct GridSpec {
    int points = 101;  ///< per side, odd keeps q3 = 0 on the grid
    /// Detector half-angle theta3; defaults to semiaperture / M.
    std::optional<double> half_angle_rad;
};

/// Output field of photon 1 over the detector grid.
///
/// Relative phases between grid points are computed but carry no physical
/// meaning for the observables built on the map.
struct FieldMap {
    std::vector<double> axis;         ///< q3 coordinates, nm^-1 (x and y)
    std::vector<double> axis_angle;   ///< matching theta3, radians
    double half_angle_rad = 0.0;
    double wavelength_nm = 0.0;
    JonesVector input;
    double input_angle_rad = 0.0;     ///< linear input polarization angle
    std::vector<JonesVector> field;   ///< index iy * n + ix

    std::size_t side() const { return axis.size(); }
    double intensity(std::size_t idx) const { return field[idx].intensity(); }
    /// Ellipse at a grid point, empty where the field vanishes.
    std::optional<PolarizationEllipse> ellipse(std::size_t idx) const;
};

/// Builds the detector axis for a setup and grid specification.
std::vector<double> detector_axis(const SetupParams& setup, const GridSpec& grid);

/// E(q3) = T(q3, 0) * input for a linearly polarized input at input_angle.
FieldMap field_map(double input_angle_rad, const GridSpec& grid, const TelescopeKernel& kernel);
/// Several input polarizations sharing one evaluation of T on the grid.
std::vector<FieldMap> field_maps(const std::vector<double>& input_angles_rad, const GridSpec& grid,
                                 const TelescopeKernel& kernel);
FieldMap field_map(double input_angle_rad, const GridSpec& grid, const SetupParams& setup,
                   const QuadratureOptions& options = {});

}  // namespace pbs
