#pragma once

#include <cmath>
#include <complex>
#include <algorithm>
#include <array>
#include <random>

#include "pbs/jones.hpp"

namespace pbs::test {

inline std::mt19937_64 rng(unsigned long seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline cplx random_cplx(std::mt19937_64& g) {
    std::normal_distribution<double> n;
    return {n(g), n(g)};
}

inline JonesVector random_vector(std::mt19937_64& g) { return {random_cplx(g), random_cplx(g)}; }

inline JonesMatrix random_matrix(std::mt19937_64& g) {
    return {random_cplx(g), random_cplx(g), random_cplx(g), random_cplx(g)};
}

inline double max_diff(const JonesMatrix& a, const JonesMatrix& b) { return (a - b).max_abs(); }

/// Relative deviation of m from a multiple of the identity.
inline double identity_deviation(const JonesMatrix& m) {
    const double scale = 0.5 * (std::abs(m.xx) + std::abs(m.yy));
    return std::max({std::abs(m.xy), std::abs(m.yx), std::abs(m.xx - m.yy)}) / scale;
}

/// Largest entry difference after removing the best global complex scalar.
inline double scalar_mismatch(const JonesMatrix& a, const JonesMatrix& b) {
    const std::array<cplx, 4> x{a.xx, a.xy, a.yx, a.yy}, y{b.xx, b.xy, b.yx, b.yy};
    cplx num{0.0};
    double den = 0.0;
    for (int i = 0; i < 4; ++i) {
        num += std::conj(y[i]) * x[i];
        den += std::norm(y[i]);
    }
    const cplx c = num / den;
    double worst = 0.0, scale = 0.0;
    for (int i = 0; i < 4; ++i) {
        worst = std::max(worst, std::abs(x[i] - c * y[i]));
        scale = std::max(scale, std::abs(x[i]));
    }
    return worst / scale;
}

}  // namespace pbs::test
