#pragma once

// Jones calculus in the fixed laboratory (x, y) transverse basis.
//
// Handedness convention: PolarizationEllipse::axis_ratio is positive exactly
// when Im(ex * conj(ey)) > 0. With this convention (1, i)/sqrt(2) has
// axis_ratio -1 and (1, -i)/sqrt(2) has axis_ratio +1. Whether that is called
// "left" or "right" depends on the time-dependence and viewing conventions,
// so the library only ever talks about the sign.

#include <array>
#include <complex>

#include "pbs/vec2.hpp"

namespace pbs {

using cplx = std::complex<double>;

struct JonesVector {
    cplx ex{0.0};
    cplx ey{0.0};

    double intensity() const { return std::norm(ex) + std::norm(ey); }
    bool finite() const;

    /// Linear polarization at angle beta from the x axis.
    static JonesVector linear(double beta);

    JonesVector operator+(const JonesVector& o) const { return {ex + o.ex, ey + o.ey}; }
    JonesVector operator*(cplx s) const { return {ex * s, ey * s}; }
};

/// Hermitian inner product <a|b> = conj(a) . b
cplx inner(const JonesVector& a, const JonesVector& b);

struct JonesMatrix {
    // Row = output component, column = input component.
    cplx xx{0.0}, xy{0.0}, yx{0.0}, yy{0.0};

    static JonesMatrix identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static JonesMatrix zero() { return {}; }
    static JonesMatrix scalar(cplx s) { return {s, 0.0, 0.0, s}; }
    /// Outer product u v^T (no conjugation).
    static JonesMatrix dyad(Vec2 u, Vec2 v);

    JonesMatrix operator*(const JonesMatrix& o) const;
    JonesVector operator*(const JonesVector& v) const;
    JonesMatrix operator*(cplx s) const { return {xx * s, xy * s, yx * s, yy * s}; }
    JonesMatrix operator+(const JonesMatrix& o) const {
        return {xx + o.xx, xy + o.xy, yx + o.yx, yy + o.yy};
    }
    JonesMatrix operator-(const JonesMatrix& o) const {
        return {xx - o.xx, xy - o.xy, yx - o.yx, yy - o.yy};
    }
    JonesMatrix& operator+=(const JonesMatrix& o);

    JonesMatrix transpose() const { return {xx, yx, xy, yy}; }
    JonesMatrix adjoint() const;
    cplx trace() const { return xx + yy; }
    cplx det() const { return xx * yy - xy * yx; }
    bool finite() const;

    /// Largest absolute value among the four entries.
    double max_abs() const;
    /// Largest singular value.
    double spectral_norm() const;
};

struct PolarizationEllipse {
    double orientation = 0.0;  ///< major-axis angle psi, radians in [-pi/2, pi/2)
    double axis_ratio = 0.0;   ///< signed minor/major ratio in [-1, 1]
    double intensity = 0.0;
};

/// Active rotation by phi: [[cos, -sin], [sin, cos]].
JonesMatrix rotation(double phi);

/// Ideal linear polarizer transmitting along (cos beta, sin beta).
JonesMatrix polarizer(double beta);

/// Throws DomainError on zero-intensity or non-finite input.
PolarizationEllipse ellipse_of(const JonesVector& v);

/// Difference of two orientations folded into [-pi/2, pi/2).
double orientation_difference(double a, double b);

}  // namespace pbs
