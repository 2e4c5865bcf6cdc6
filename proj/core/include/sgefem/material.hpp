#pragma once

#include <Eigen/Dense>

namespace sgefem {

// Isotropic plane-strain material of the simplified strain gradient model:
// one classical pair (lambda, mu) plus a single length scale ell that sets
// the gradient stiffness to ell^2 times the classical one.
struct MaterialParams {
    double youngs_modulus = 0.0;  // E [Pa]
    double poisson_ratio = 0.0;   // nu [-]
    double lame_lambda = 0.0;     // lambda [Pa]
    double shear_modulus = 0.0;   // mu [Pa]
    double kolosov = 0.0;         // eta = 3 - 4 nu [-]
    double length_scale = 0.0;    // ell [m]
};

// Voigt-form material matrices.
//  c (3x3): strain (e11, e22, 2 e12) -> Cauchy stress (t11, t22, t12)
//  a (6x6): strain gradient (e11,1  e11,2  e22,1  e22,2  2e12,1  2e12,2)
//           -> double stress (m111, m112, m221, m222, m121, m122)
struct ConstitutiveMatrices {
    Eigen::Matrix3d c;
    Eigen::Matrix<double, 6, 6> a;
};

// Validates inputs and derives lambda, mu, eta.
// Throws ParameterError unless E > 0, 0 <= nu < 0.5, ell >= 0.
MaterialParams make_material(double youngs_modulus, double poisson_ratio,
                             double length_scale);

ConstitutiveMatrices constitutive_matrices(const MaterialParams& m);

} // namespace sgefem
