#pragma once

#include <Eigen/Dense>

#include <array>

namespace sgefem {

// Affine geometry of a straight-sided triangle and its areal-coordinate
// coefficients: L_i = (a_i + b_i x + c_i y) / delta.
struct TriangleGeometry {
    std::array<Eigen::Vector2d, 3> nodes;
    Eigen::Vector3d a;  // a_i = x_j y_k - x_k y_j  [m^2]
    Eigen::Vector3d b;  // b_i = y_j - y_k          [m]
    Eigen::Vector3d c;  // c_i = x_k - x_j          [m]
    double delta = 0.0; // signed doubled area      [m^2]

    double area() const { return 0.5 * std::abs(delta); }
    // Longest edge length, used as the element size scale h.
    double size() const;
};

// Builds the areal-coordinate coefficients.
// Throws MeshError when |delta| < 1e-12 * size^2 (degenerate element).
TriangleGeometry triangle_geometry(const Eigen::Vector2d& n1,
                                   const Eigen::Vector2d& n2,
                                   const Eigen::Vector2d& n3);

Eigen::Vector3d areal_coords(const TriangleGeometry& g, const Eigen::Vector2d& p);
Eigen::Vector2d point_from_areal(const TriangleGeometry& g, const Eigen::Vector3d& L);

// Values and Cartesian derivatives of the 18 Bell shape functions at one point.
// Ordering: functions 1..6 carry the node-1 degrees of freedom
// (value, d/dx, d/dy, d2/dx2, d2/dxdy, d2/dy2), functions 7..12 node 2,
// 13..18 node 3.
struct ShapeEval {
    Eigen::Matrix<double, 18, 1> n;
    Eigen::Matrix<double, 18, 2> dn;   // columns: d/dx, d/dy
    Eigen::Matrix<double, 18, 3> ddn;  // columns: xx, xy, yy
};

// Quintic Bell basis baked for one element. Construction expands the
// shape-function polynomials once; eval() is then cheap per quadrature point.
class BellBasis {
public:
    explicit BellBasis(const TriangleGeometry& g);

    ShapeEval eval(const Eigen::Vector3d& L) const;

    const TriangleGeometry& geometry() const { return geom_; }

private:
    struct Term {
        std::uint8_t e1, e2, e3;
        double coef;
    };
    TriangleGeometry geom_;
    // per shape function, a short monomial list in (L1, L2, L3)
    std::array<std::array<Term, 9>, 18> terms_{};
    std::array<int, 18> nterms_{};
};

// One-shot convenience wrapper around BellBasis.
ShapeEval shape_eval(const TriangleGeometry& g, const Eigen::Vector3d& L);

} // namespace sgefem
