#pragma once

// Transfer matrix of the perforated metal film for the zeroth diffracted
// order. The matrix is diagonal in the transverse wavevector q, so it is a
// single Jones matrix per (q, wavelength).
//
// Analytic model, lab frame:
//
//   F(q, lambda) = t_d I + sum_families sum_{G in family}
//                  A_f * L(lambda; lambda_G(q), gamma_f) * e_G e_G^T
//
// with e_G = (q + G)/|q + G|, lambda_G(q) = 2 pi n_eff / |q + G| and the
// unit-peak Lorentzian L = i gamma / (lambda - lambda_G + i gamma).

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pbs/jones.hpp"
#include "pbs/vec2.hpp"

namespace pbs {

struct LatticeOrder {
    int m1 = 0;
    int m2 = 0;
    bool operator==(const LatticeOrder&) const = default;
};

/// Reciprocal lattice vector (2 pi / d)(m1, m2), nm^-1.
Vec2 reciprocal_vector(LatticeOrder order, double period_nm);

/// A set of surface-plasmon orders related by the square-lattice point group,
/// sharing one resonance wavelength at normal incidence.
struct ResonanceFamily {
    std::vector<LatticeOrder> orders;
    double lambda0_nm = 0.0;  ///< resonance wavelength at q = 0
    double width_nm = 5.0;    ///< Lorentzian half-width gamma
    cplx amplitude{0.0};      ///< peak amplitude per order
    double phase_rad = 0.0;   ///< extra phase relative to the direct term

    /// lambda0 * |(m1, m2)| / d
    double n_eff(double period_nm) const;
    /// Amplitude including the extra phase.
    cplx effective_amplitude() const;
    /// Throws DomainError unless nonempty, closed under the point group,
    /// single-orbit, lambda0 > 0, width > 0 and n_eff > 1.
    void validate(double period_nm) const;

    /// (+-1, +-1) orders.
    static ResonanceFamily diagonal(double lambda0_nm, double width_nm, cplx amplitude);
    /// (+-1, 0) and (0, +-1) orders.
    static ResonanceFamily axial(double lambda0_nm, double width_nm, cplx amplitude);
};

/// Rectangular grid of lab-frame film matrices, indexed (lambda, qx, qy) with
/// qy varying fastest.
struct FilmTable {
    std::vector<double> lambda_nm;
    std::vector<double> qx;
    std::vector<double> qy;
    std::vector<JonesMatrix> values;

    const JonesMatrix& at(std::size_t il, std::size_t ix, std::size_t iy) const {
        return values[(il * qx.size() + ix) * qy.size() + iy];
    }
    void validate() const;
};

// Calibration of the default film. Both resonances peak at 3 %
// transmittance. The axial resonance is kept narrow: at 797 nm its orders
// become resonant on a ring inside an 8 degree aperture, and a broad
// Lorentzian there would dominate the output polarization.
inline constexpr double kDefaultDirectAmplitude = 0.033;
inline constexpr double kDefaultDiagonalWidth = 6.0;  // nm
inline constexpr double kDefaultAxialWidth = 1.5;     // nm

struct FilmModel {
    double period_nm = 700.0;
    cplx direct_amplitude{kDefaultDirectAmplitude};
    std::vector<ResonanceFamily> families;
    // Descriptive only; the phenomenological model does not use them.
    double thickness_nm = 200.0;
    double hole_diameter_nm = 200.0;
    /// When present, overrides the analytic model.
    std::optional<FilmTable> table;

    void validate() const;
    bool is_tabulated() const { return table.has_value(); }

    /// Square lattice, d = 700 nm, diagonal family at 797 nm and axial family
    /// at 728 nm, peak transmittance 3 % for each.
    static FilmModel calibrated();
};

/// Default per-order amplitude giving |t_d + 2A|^2 = 0.03 at a single-family
/// resonance at normal incidence.
double default_resonance_amplitude(double direct_amplitude, double peak_transmittance = 0.03);

/// Wavelength solving |q + G| = 2 pi n_eff / lambda.
double resonance_wavelength(const ResonanceFamily& family, LatticeOrder order, Vec2 q,
                            double period_nm);

/// Lab-frame film matrix. Throws DomainError for non-paraxial q or
/// lambda <= 0 and for points outside a tabulated grid.
JonesMatrix film_matrix(const FilmModel& model, Vec2 q, double lambda_nm);

/// |F(q, lambda) pol|^2 for a normalized polarization.
double transmittance(const FilmModel& model, Vec2 q, double lambda_nm, const JonesVector& pol);

inline constexpr const char* kFilmTableHeader =
    "qx,qy,lambda_nm,re_xx,im_xx,re_xy,im_xy,re_yx,im_yx,re_yy,im_yy";

FilmTable parse_film_table(std::istream& in);
void write_film_table(std::ostream& out, const FilmTable& table);

/// Reads a tabulated film (CSV, see kFilmTableHeader). Throws ConfigError on
/// malformed rows, NaN entries or non-rectangular grids.
FilmModel load_tabulated(const std::filesystem::path& path);
/// Writes model.table; throws DomainError for analytic models.
void save_tabulated(const FilmModel& model, const std::filesystem::path& path);

}  // namespace pbs
