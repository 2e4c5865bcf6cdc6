#pragma once

#include "sgefem/asymptotics.hpp"
#include "sgefem/bell.hpp"

#include <Eigen/Dense>

namespace sgefem {

// Values and Cartesian derivatives of the renormalized tip functions
// Q*_in = Q_in - sum_j [ Q_in(node j) N_j^(0) + dQ_in/dx(node j) N_j^(1)
//                        + dQ_in/dy(node j) N_j^(2) ]
// at one evaluation point of one tip-incident element. Q* and its first
// derivatives vanish at all three nodes, so adding K_n Q*_in to the Bell
// interpolation leaves every nodal degree of freedom meaningful and keeps the
// global field C1.
struct EnrichedEval {
    double qstar[2][4];
    double dqstar[2][4][2];
    double ddqstar[2][4][3];
};

// Per-element enrichment helper: caches the nodal values of Q and its first
// derivatives so quadrature-point evaluation only combines them with the
// shape functions. The crack tip must coincide with one of the element nodes;
// otherwise the constructor throws EnrichmentError.
class EnrichedBasis {
public:
    EnrichedBasis(const TriangleGeometry& g, const Eigen::Vector2d& tip,
                  const QFamily& family);

    // `shapes` must be evaluated at the same areal point L.
    EnrichedEval eval(const Eigen::Vector3d& L, const ShapeEval& shapes) const;

    int tip_local_node() const { return tip_local_; }

private:
    TriangleGeometry geom_;
    Eigen::Vector2d tip_;
    const QFamily& family_;  // caller keeps the family alive
    int tip_local_ = -1;
    double nq_[3][2][4];      // Q at node j
    double ndq_[3][2][4][2];  // dQ at node j
};

// One-shot wrapper (constructs the QFamily and the basis).
EnrichedEval enriched_eval(const TriangleGeometry& g, const Eigen::Vector2d& tip,
                           const Eigen::Vector3d& L, double kolosov);

// Displacements and their first and second derivatives of the enriched
// interpolation u_i = sum_k u_hat_k N_k + 1/(4 mu) sum_n K_n Q*_in.
struct InterpolatedField {
    double u = 0.0, v = 0.0;
    Eigen::Vector2d du = Eigen::Vector2d::Zero();   // du/dx, du/dy
    Eigen::Vector2d dv = Eigen::Vector2d::Zero();
    Eigen::Vector3d ddu = Eigen::Vector3d::Zero();  // xx, xy, yy
    Eigen::Vector3d ddv = Eigen::Vector3d::Zero();
};

// `nodal` holds the 36 element DOFs in the element ordering (per node:
// u, u_x, u_y, u_xx, u_xy, u_yy, v, v_x, ..., v_yy). Pass enriched = nullptr
// for a conventional element.
InterpolatedField enriched_interpolation(const Eigen::Matrix<double, 36, 1>& nodal,
                                         const AmplitudeFactors& k,
                                         const EnrichedEval* enriched,
                                         const ShapeEval& shapes,
                                         double shear_modulus);

} // namespace sgefem
