#include "pbs/jones.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pbs/error.hpp"

namespace pbs {

namespace {
bool finite_c(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
}  // namespace

bool JonesVector::finite() const { return finite_c(ex) && finite_c(ey); }

JonesVector JonesVector::linear(double beta) { return {std::cos(beta), std::sin(beta)}; }

cplx inner(const JonesVector& a, const JonesVector& b) {
    return std::conj(a.ex) * b.ex + std::conj(a.ey) * b.ey;
}

JonesMatrix JonesMatrix::dyad(Vec2 u, Vec2 v) {
    return {u.x * v.x, u.x * v.y, u.y * v.x, u.y * v.y};
}

JonesMatrix JonesMatrix::operator*(const JonesMatrix& o) const {
    return {xx * o.xx + xy * o.yx, xx * o.xy + xy * o.yy,
            yx * o.xx + yy * o.yx, yx * o.xy + yy * o.yy};
}

JonesVector JonesMatrix::operator*(const JonesVector& v) const {
    return {xx * v.ex + xy * v.ey, yx * v.ex + yy * v.ey};
}

JonesMatrix& JonesMatrix::operator+=(const JonesMatrix& o) {
    xx += o.xx;
    xy += o.xy;
    yx += o.yx;
    yy += o.yy;
    return *this;
}

JonesMatrix JonesMatrix::adjoint() const {
    return {std::conj(xx), std::conj(yx), std::conj(xy), std::conj(yy)};
}

bool JonesMatrix::finite() const {
    return finite_c(xx) && finite_c(xy) && finite_c(yx) && finite_c(yy);
}

double JonesMatrix::max_abs() const {
    return std::max({std::abs(xx), std::abs(xy), std::abs(yx), std::abs(yy)});
}

double JonesMatrix::spectral_norm() const {
    const double fro2 = std::norm(xx) + std::norm(xy) + std::norm(yx) + std::norm(yy);
    const double d2 = std::norm(det());
    const double disc = std::max(0.0, fro2 * fro2 - 4.0 * d2);
    return std::sqrt(0.5 * (fro2 + std::sqrt(disc)));
}

JonesMatrix rotation(double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    return {c, -s, s, c};
}

JonesMatrix polarizer(double beta) {
    const Vec2 e{std::cos(beta), std::sin(beta)};
    return JonesMatrix::dyad(e, e);
}

PolarizationEllipse ellipse_of(const JonesVector& v) {
    if (!v.finite()) throw DomainError("ellipse_of: non-finite Jones vector");
    const double s0 = v.intensity();
    if (!(s0 > 0.0)) throw DomainError("ellipse_of: zero-intensity Jones vector has no ellipse");

    const cplx cross = v.ex * std::conj(v.ey);
    const double s1 = std::norm(v.ex) - std::norm(v.ey);
    const double s2 = 2.0 * cross.real();
    const double s3 = 2.0 * cross.imag();

    PolarizationEllipse e;
    e.intensity = s0;
    const double chi = 0.5 * std::asin(std::clamp(s3 / s0, -1.0, 1.0));
    e.axis_ratio = std::clamp(std::tan(chi), -1.0, 1.0);
    if (std::abs(e.axis_ratio) == 1.0 || (s1 == 0.0 && s2 == 0.0)) {
        e.orientation = 0.0;
    } else {
        e.orientation = orientation_difference(0.5 * std::atan2(s2, s1), 0.0);
    }
    return e;
}

double orientation_difference(double a, double b) {
    constexpr double pi = std::numbers::pi;
    double d = std::fmod(a - b + 0.5 * pi, pi);
    if (d < 0.0) d += pi;
    d -= 0.5 * pi;
    // fmod can land exactly on +pi/2 after the shift when rounding.
    if (d >= 0.5 * pi) d -= pi;
    return d;
}

}  // namespace pbs
