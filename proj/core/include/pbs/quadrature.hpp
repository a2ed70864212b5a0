#pragma once

#include <cstddef>
#include <vector>

#include "pbs/vec2.hpp"

namespace pbs {

struct QuadratureOptions {
    int cells = 201;          ///< cells per side of the square bounding the disc
    int order = 3;            ///< Gauss-Legendre points per cell and axis (interior)
    int boundary_order = 3;   ///< Gauss-Legendre points per axis in clipped cells

    /// Same rule with the cell density doubled `times` times.
    QuadratureOptions refined(int times) const;
};

/// Gauss-Legendre nodes and weights on [-1, 1]. Nodes are exactly
/// antisymmetric (node[n-1-i] == -node[i]).
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
    explicit GaussLegendre(int n);
};

/// Quadrature rule for integrals over the disc |q| <= R.
///
/// The bounding square is split into cells x cells cells. Cells fully inside
/// the disc use a tensor Gauss-Legendre rule whose nodes lie on a common 1-D
/// lattice, so exp(-2i a u.q) factorizes along x and y. Cells cut by the
/// circle are clipped exactly (piecewise-smooth limits) and integrated with
/// their own Gauss nodes. The boundary node set is generated from one octant
/// and mapped by the eight square-lattice symmetries, so the complete rule
/// is exactly invariant under the point group.
///
/// A zero radius yields a single node at the origin with unit weight; it
/// represents the plane-wave (monomode) limit.
class DiscQuadrature {
public:
    struct Node {
        Vec2 q;
        double weight;
    };
    /// Interior lattice points of lattice row j lie in columns [begin, end).
    struct Span {
        std::size_t begin = 0;
        std::size_t end = 0;
    };

    DiscQuadrature(double radius, QuadratureOptions options = {});

    double radius() const { return radius_; }
    const QuadratureOptions& options() const { return options_; }
    bool degenerate() const { return radius_ == 0.0; }

    /// 1-D lattice coordinates, shared by x and y.
    const std::vector<double>& lattice() const { return lattice_; }
    /// 1-D lattice weights; an interior node (i, j) has weight w[i] * w[j].
    const std::vector<double>& lattice_weights() const { return lattice_w_; }
    const std::vector<Span>& interior_rows() const { return rows_; }
    const std::vector<Node>& boundary_nodes() const { return boundary_; }

    std::size_t interior_size() const;
    std::size_t size() const { return interior_size() + boundary_.size(); }

    /// Calls fn(q, weight) for every node in a fixed order.
    template <class Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t j = 0; j < rows_.size(); ++j) {
            for (std::size_t i = rows_[j].begin; i < rows_[j].end; ++i) {
                fn(Vec2{lattice_[i], lattice_[j]}, lattice_w_[i] * lattice_w_[j]);
            }
        }
        for (const auto& n : boundary_) fn(n.q, n.weight);
    }

private:
    void build_boundary(double h, int n_cells);

    double radius_;
    QuadratureOptions options_;
    std::vector<double> lattice_;
    std::vector<double> lattice_w_;
    std::vector<Span> rows_;
    std::vector<Node> boundary_;
};

}  // namespace pbs
