#include "pbs/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Eigenvalues>

#include "pbs/error.hpp"

namespace pbs {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

// Deterministic pairwise summation of 2x2 matrices.
Eigen::Matrix2cd pairwise_sum(std::span<const Eigen::Matrix2cd> terms) {
    if (terms.empty()) return Eigen::Matrix2cd::Zero();
    if (terms.size() == 1) return terms[0];
    const std::size_t half = terms.size() / 2;
    return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

}  // namespace

double BiphotonState::norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

BiphotonState BiphotonState::normalized() const {
    const double n = norm();
    if (!(n > 0.0)) throw DomainError("BiphotonState: cannot normalize the zero state");
    BiphotonState s = *this;
    for (auto& a : s.amplitudes) a /= n;
    return s;
}

BiphotonState BiphotonState::transformed(const JonesMatrix& a, const JonesMatrix& b) const {
    const std::array<std::array<cplx, 2>, 2> ma{{{a.xx, a.xy}, {a.yx, a.yy}}};
    const std::array<std::array<cplx, 2>, 2> mb{{{b.xx, b.xy}, {b.yx, b.yy}}};
    BiphotonState out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    out.amplitudes[2 * i + j] += ma[i][k] * mb[j][l] * amplitudes[2 * k + l];
    return out;
}

Matrix4c BiphotonState::density() const {
    Eigen::Vector4cd v(amplitudes[0], amplitudes[1], amplitudes[2], amplitudes[3]);
    return v * v.adjoint();
}

BiphotonState singlet() {
    const double s = std::numbers::sqrt2 / 2.0;
    return {{0.0, s, -s, 0.0}};
}

GramMatrix GramMatrix::all_ones() { return {Matrix4c::Ones()}; }

GramMatrix GramMatrix::identity() { return {Matrix4c::Identity()}; }

void GramMatrix::validate(double tol) const {
    if (!entries.allFinite()) throw DomainError("Gram matrix: non-finite entry");
    if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > tol) {
        throw DomainError("Gram matrix: not Hermitian");
    }
    for (int i = 0; i < 4; ++i) {
        if (std::abs(entries(i, i) - 1.0) > tol) throw DomainError("Gram matrix: diagonal must be 1");
    }
    const Eigen::SelfAdjointEigenSolver<Matrix4c> es(entries);
    if (es.eigenvalues().minCoeff() < -tol) {
        throw DomainError("Gram matrix: not positive semidefinite");
    }
}

PostselectedState postselect_channel(const JonesMatrix& t, const GramMatrix& gram) {
    gram.validate();
    if (!t.finite()) throw DomainError("postselect_channel: non-finite transfer matrix");

    // Solid labels xx, yx, xy, yy: coefficient and the two-photon basis
    // state it multiplies, for the singlet input (amplitudes 1/sqrt(2)).
    const double s = std::numbers::sqrt2 / 2.0;
    const std::array<cplx, 4> coeff{s * t.xx, s * t.yx, -s * t.xy, -s * t.yy};
    const std::array<int, 4> target{1, 3, 0, 2};  // |XY>, |YY>, |XX>, |YX>

    PostselectedState out;
    for (int ab = 0; ab < 4; ++ab) {
        for (int cd = 0; cd < 4; ++cd) {
            out.rho(target[ab], target[cd]) += coeff[ab] * std::conj(coeff[cd]) * gram.entries(ab, cd);
        }
    }
    const double trace = out.rho.trace().real();
    if (!(trace > 0.0)) throw DomainError("postselect_channel: no two-photon events survive");
    out.success_weight = trace;
    out.rho /= trace;
    return out;
}

double concurrence(const Matrix4c& rho) {
    Matrix4c flip = Matrix4c::Zero();
    // sigma_y (x) sigma_y in the |XX>,|XY>,|YX>,|YY> basis.
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;
    const Matrix4c tilde = flip * rho.conjugate() * flip;

    const Eigen::SelfAdjointEigenSolver<Matrix4c> es(rho);
    const Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Matrix4c sqrt_rho = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    const Matrix4c m = sqrt_rho * tilde * sqrt_rho;
    const Eigen::SelfAdjointEigenSolver<Matrix4c> es2(0.5 * (m + m.adjoint()));
    std::array<double, 4> l{};
    for (int i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(0.0, es2.eigenvalues()(i)));
    std::sort(l.begin(), l.end(), std::greater<>());
    return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

Eigen::Matrix2cd conditional_matrix(const PostselectedState& state, double beta2) {
    const std::array<double, 2> e2{std::cos(beta2), std::sin(beta2)};
    Eigen::Matrix2cd a = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    a(i, j) += e2[k] * e2[l] * state.rho(2 * i + k, 2 * j + l);
    return a;
}

double coincidence_rate(const PostselectedState& state, double beta1, double beta2) {
    const Eigen::Vector2cd e1(std::cos(beta1), std::sin(beta1));
    return std::max(0.0, (e1.adjoint() * conditional_matrix(state, beta2) * e1)(0, 0).real());
}

Eigen::Matrix2cd conditional_matrix(const FieldMap& map, double beta2, const DetectorOptions& detector) {
    if (std::abs(orientation_difference(map.input_angle_rad, beta2 + kHalfPi)) > 1e-9) {
        throw DomainError("field map input polarization does not match beta2 + 90 degrees");
    }
    const std::size_t n = map.side();
    double r2_max = std::numeric_limits<double>::infinity();
    if (detector.iris_fraction) {
        const double r = *detector.iris_fraction * (n > 0 ? map.axis.back() : 0.0);
        r2_max = r * r;
    }
    std::vector<Eigen::Matrix2cd> terms;
    terms.reserve(map.field.size());
    for (std::size_t iy = 0; iy < n; ++iy) {
        for (std::size_t ix = 0; ix < n; ++ix) {
            const double r2 = map.axis[ix] * map.axis[ix] + map.axis[iy] * map.axis[iy];
            if (r2 > r2_max) continue;
            const JonesVector& e = map.field[iy * n + ix];
            const Eigen::Vector2cd v(e.ex, e.ey);
            terms.push_back(v * v.adjoint());
        }
    }
    return pairwise_sum(terms);
}

double coincidence_rate(const FieldMap& map, double beta1, double beta2, const DetectorOptions& detector) {
    const Eigen::Vector2cd e1(std::cos(beta1), std::sin(beta1));
    return std::max(0.0, (e1.adjoint() * conditional_matrix(map, beta2, detector) * e1)(0, 0).real());
}

VisibilityResult visibility_from_matrix(double beta2, const Eigen::Matrix2cd& a) {
    const double sxx = a(0, 0).real();
    const double syy = a(1, 1).real();
    const double sxy = 0.5 * (a(0, 1).real() + a(1, 0).real());
    const double mean = 0.5 * (sxx + syy);
    const double radius = std::hypot(0.5 * (sxx - syy), sxy);
    if (!(mean > 0.0) || !std::isfinite(mean)) {
        throw DomainError("visibility: coincidence matrix vanishes, visibility undefined");
    }
    VisibilityResult r;
    r.beta2 = beta2;
    r.c_max = mean + radius;
    r.c_min = std::max(0.0, mean - radius);
    r.visibility = std::clamp((r.c_max - r.c_min) / (r.c_max + r.c_min), 0.0, 1.0);
    r.beta1_max = orientation_difference(0.5 * std::atan2(2.0 * sxy, sxx - syy), 0.0);
    r.beta1_min = orientation_difference(r.beta1_max + kHalfPi, 0.0);
    return r;
}

VisibilityResult visibility(double beta2, const PostselectedState& state) {
    return visibility_from_matrix(beta2, conditional_matrix(state, beta2));
}

VisibilityResult visibility(double beta2, const FieldMap& map, const DetectorOptions& detector) {
    return visibility_from_matrix(beta2, conditional_matrix(map, beta2, detector));
}

}  // namespace pbs
