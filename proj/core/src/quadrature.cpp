#include "pbs/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "pbs/error.hpp"

namespace pbs {

QuadratureOptions QuadratureOptions::refined(int times) const {
    QuadratureOptions o = *this;
    for (int i = 0; i < times; ++i) o.cells *= 2;
    return o;
}

GaussLegendre::GaussLegendre(int n) {
    if (n < 1) throw DomainError("GaussLegendre: order must be positive");
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    if (n == 1) {
        weights[0] = 2.0;
        return;
    }
    // Legendre P_n and its derivative at x.
    auto legendre = [n](double x) {
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
    };
    for (int i = 0; i < n / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double dp = legendre(x).second;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) {
        const double dp = legendre(0.0).second;
        weights[static_cast<std::size_t>(n / 2)] = 2.0 / (dp * dp);
    }
}

namespace {

// The eight symmetries of the square acting on (x, y).
constexpr std::array<std::array<int, 3>, 8> kGroup{{
    // {swap, sx, sy}: (x, y) -> swap ? (sx*y, sy*x) : (sx*x, sy*y)
    {0, 1, 1}, {0, -1, 1}, {0, 1, -1}, {0, -1, -1},
    {1, 1, 1}, {1, -1, 1}, {1, 1, -1}, {1, -1, -1},
}};

template <class T>
std::pair<T, T> apply(const std::array<int, 3>& g, T x, T y) {
    if (g[0]) std::swap(x, y);
    return {g[1] < 0 ? -x : x, g[2] < 0 ? -y : y};
}

}  // namespace

DiscQuadrature::DiscQuadrature(double radius, QuadratureOptions options)
    : radius_(radius), options_(options) {
    if (!(radius >= 0.0) || !std::isfinite(radius)) {
        throw DomainError("DiscQuadrature: radius must be finite and non-negative");
    }
    if (options.cells < 1 || options.order < 1 || options.boundary_order < 1) {
        throw DomainError("DiscQuadrature: cells and orders must be positive");
    }
    if (radius == 0.0) {
        lattice_ = {0.0};
        lattice_w_ = {1.0};
        rows_ = {{0, 1}};
        return;
    }

    const int n_cells = options.cells;
    const int order = options.order;
    const double h = 2.0 * radius / n_cells;
    const double mid = 0.5 * (n_cells - 1);
    const GaussLegendre gl(order);

    lattice_.reserve(static_cast<std::size_t>(n_cells * order));
    lattice_w_.reserve(lattice_.capacity());
    for (int i = 0; i < n_cells; ++i) {
        const double c = (i - mid) * h;
        for (int k = 0; k < order; ++k) {
            lattice_.push_back(c + 0.5 * h * gl.nodes[static_cast<std::size_t>(k)]);
            lattice_w_.push_back(0.5 * h * gl.weights[static_cast<std::size_t>(k)]);
        }
    }

    // A cell is interior when its corner farthest from the origin is inside.
    const double r2 = radius * radius;
    auto far = [&](int i) {
        const double c = (i - mid) * h;
        return std::max(std::abs(c - 0.5 * h), std::abs(c + 0.5 * h));
    };
    rows_.assign(lattice_.size(), Span{});
    for (int j = 0; j < n_cells; ++j) {
        const double fy = far(j);
        int lo = -1;
        int hi = -1;
        for (int i = 0; i < n_cells; ++i) {
            const double fx = far(i);
            if (fx * fx + fy * fy <= r2) {
                if (lo < 0) lo = i;
                hi = i;
            }
        }
        if (lo < 0) continue;
        for (int k = 0; k < order; ++k) {
            rows_[static_cast<std::size_t>(j * order + k)] = {
                static_cast<std::size_t>(lo * order), static_cast<std::size_t>((hi + 1) * order)};
        }
    }

    build_boundary(h, n_cells);
}

void DiscQuadrature::build_boundary(double h, int n_cells) {
    const double R = radius_;
    const double r2 = R * R;
    const double mid = 0.5 * (n_cells - 1);
    const GaussLegendre gl(options_.boundary_order);

    auto near = [&](double c) {
        const double a = c - 0.5 * h;
        const double b = c + 0.5 * h;
        return (a <= 0.0 && b >= 0.0) ? 0.0 : std::min(std::abs(a), std::abs(b));
    };
    auto far = [&](double c) { return std::max(std::abs(c - 0.5 * h), std::abs(c + 0.5 * h)); };

    std::vector<Node> cell_nodes;
    for (int i = 0; i < n_cells; ++i) {
        const double a = i - mid;  // cell index relative to the centre
        if (a < 0.0) continue;
        for (int j = 0; j < n_cells; ++j) {
            const double b = j - mid;
            if (b < 0.0 || b > a) continue;  // fundamental octant 0 <= b <= a
            const double cx = a * h;
            const double cy = b * h;
            const double nx = near(cx), ny = near(cy);
            const double fx = far(cx), fy = far(cy);
            if (nx * nx + ny * ny >= r2) continue;  // outside
            if (fx * fx + fy * fy <= r2) continue;  // interior

            const double x0 = cx - 0.5 * h, x1 = cx + 0.5 * h;
            const double y0 = cy - 0.5 * h, y1 = cy + 0.5 * h;

            // y is the outer variable: in this octant x = sqrt(R^2 - y^2) has
            // slope at most ~1 across the cell.
            std::vector<double> breaks{std::max(y0, -R), std::min(y1, R)};
            for (double xc : {x0, x1}) {
                if (std::abs(xc) < R) {
                    const double yb = std::sqrt(r2 - xc * xc);
                    for (double s : {-yb, yb}) {
                        if (s > breaks[0] && s < breaks[1]) breaks.push_back(s);
                    }
                }
            }
            std::sort(breaks.begin(), breaks.end());

            cell_nodes.clear();
            for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
                const double ya = breaks[s], yb = breaks[s + 1];
                if (!(yb > ya)) continue;
                const double ym = 0.5 * (ya + yb), yh = 0.5 * (yb - ya);
                for (std::size_t ky = 0; ky < gl.nodes.size(); ++ky) {
                    const double y = ym + yh * gl.nodes[ky];
                    const double sy = std::sqrt(std::max(0.0, r2 - y * y));
                    const double xl = std::max(x0, -sy);
                    const double xu = std::min(x1, sy);
                    if (!(xu > xl)) continue;
                    const double xm = 0.5 * (xl + xu), xh = 0.5 * (xu - xl);
                    for (std::size_t kx = 0; kx < gl.nodes.size(); ++kx) {
                        cell_nodes.push_back(
                            {{xm + xh * gl.nodes[kx], y}, yh * gl.weights[ky] * xh * gl.weights[kx]});
                    }
                }
            }

            int stab = 0;
            for (const auto& g : kGroup) {
                const auto [ga, gb] = apply(g, a, b);
                if (ga == a && gb == b) ++stab;
            }
            for (const auto& g : kGroup) {
                for (const auto& nd : cell_nodes) {
                    const auto [x, y] = apply(g, nd.q.x, nd.q.y);
                    boundary_.push_back({{x, y}, nd.weight / stab});
                }
            }
        }
    }
}

std::size_t DiscQuadrature::interior_size() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.end - r.begin;
    return n;
}

}  // namespace pbs
