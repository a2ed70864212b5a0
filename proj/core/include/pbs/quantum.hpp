#pragma once

// Two-photon polarization states, the post-selected channel of a single
// transmitted photon with environment (solid) states, and fringe visibility.
//
// Two-qubit basis order is photon 1 (x) photon 2:
//   |XX>, |XY>, |YX>, |YY>   (indices 0..3)

#include <array>
#include <optional>

#include <Eigen/Dense>

#include "pbs/jones.hpp"
#include "pbs/optics.hpp"

namespace pbs {

using Matrix4c = Eigen::Matrix4cd;

struct BiphotonState {
    std::array<cplx, 4> amplitudes{};

    double norm() const;
    BiphotonState normalized() const;
    /// Applies a (x) b to the state.
    BiphotonState transformed(const JonesMatrix& a, const JonesMatrix& b) const;
    Matrix4c density() const;
};

/// (|XY> - |YX>) / sqrt(2)
BiphotonState singlet();

/// Overlaps of the final solid states, G[(ab),(cd)] = <S_cd|S_ab>, with the
/// labels ordered xx, yx, xy, yy.
struct GramMatrix {
    Matrix4c entries = Matrix4c::Identity();

    /// All solid states equal: no which-way information.
    static GramMatrix all_ones();
    /// Mutually orthogonal solid states: full which-way information.
    static GramMatrix identity();
    /// Throws DomainError unless Hermitian, unit-diagonal and PSD.
    void validate(double tol = 1e-10) const;
};

struct PostselectedState {
    Matrix4c rho = Matrix4c::Zero();
    /// Probability that both photons survive (trace before normalization),
    /// for a singlet input. Reported only; visibilities never use it.
    double success_weight = 0.0;
};

/// Density matrix of the photon pair after photon 1 crosses a channel with
/// transfer matrix t (t.yx is the amplitude X -> Y), tracing out the solid.
PostselectedState postselect_channel(const JonesMatrix& t, const GramMatrix& gram);

/// Wootters concurrence.
double concurrence(const Matrix4c& rho);
inline double concurrence(const PostselectedState& s) { return concurrence(s.rho); }

/// Tr[rho (P(beta1) (x) P(beta2))].
double coincidence_rate(const PostselectedState& state, double beta1, double beta2);

struct DetectorOptions {
    /// Restricts collection to |q3| <= fraction * half-extent (iris).
    std::optional<double> iris_fraction;
};

/// Multimode rate: sum over the detector grid of |e_beta1 . E(q3)|^2, with E
/// the field of photon 1 prepared at beta2 + 90 degrees. Throws DomainError
/// if the map was computed for a different input polarization.
double coincidence_rate(const FieldMap& map, double beta1, double beta2,
                        const DetectorOptions& detector = {});

struct VisibilityResult {
    double beta2 = 0.0;
    double visibility = 0.0;
    double beta1_max = 0.0;
    double beta1_min = 0.0;
    double c_max = 0.0;
    double c_min = 0.0;
};

/// Photon-1 conditional matrix A with C(beta1) = e^T A e.
Eigen::Matrix2cd conditional_matrix(const PostselectedState& state, double beta2);
Eigen::Matrix2cd conditional_matrix(const FieldMap& map, double beta2,
                                    const DetectorOptions& detector = {});

/// Visibility from the eigen-decomposition of Re(A). Throws DomainError
/// when A vanishes.
VisibilityResult visibility_from_matrix(double beta2, const Eigen::Matrix2cd& a);

VisibilityResult visibility(double beta2, const PostselectedState& state);
VisibilityResult visibility(double beta2, const FieldMap& map, const DetectorOptions& detector = {});

}  // namespace pbs
