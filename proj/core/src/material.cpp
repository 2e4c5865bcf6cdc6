#include "sgefem/material.hpp"

#include "sgefem/errors.hpp"

#include <cmath>
#include <string>

namespace sgefem {

MaterialParams make_material(double youngs_modulus, double poisson_ratio,
                             double length_scale) {
    if (!(youngs_modulus > 0.0) || !std::isfinite(youngs_modulus)) {
        throw ParameterError("make_material: Young's modulus must be positive, got " +
                             std::to_string(youngs_modulus));
    }
    if (!(poisson_ratio >= 0.0 && poisson_ratio < 0.5)) {
        throw ParameterError("make_material: Poisson ratio must satisfy 0 <= nu < 0.5 "
                             "(nu = 0.5 makes plane-strain lambda singular), got " +
                             std::to_string(poisson_ratio));
    }
    if (!(length_scale >= 0.0) || !std::isfinite(length_scale)) {
        throw ParameterError("make_material: length scale must be non-negative, got " +
                             std::to_string(length_scale));
    }
    MaterialParams m;
    m.youngs_modulus = youngs_modulus;
    m.poisson_ratio = poisson_ratio;
    m.lame_lambda = youngs_modulus * poisson_ratio /
                    ((1.0 + poisson_ratio) * (1.0 - 2.0 * poisson_ratio));
    m.shear_modulus = youngs_modulus / (2.0 * (1.0 + poisson_ratio));
    m.kolosov = 3.0 - 4.0 * poisson_ratio;
    m.length_scale = length_scale;
    return m;
}

ConstitutiveMatrices constitutive_matrices(const MaterialParams& m) {
    const double la = m.lame_lambda;
    const double mu = m.shear_modulus;
    ConstitutiveMatrices cm;
    cm.c << la + 2.0 * mu, la, 0.0,
            la, la + 2.0 * mu, 0.0,
            0.0, 0.0, mu;
    // Gradient stiffness is ell^2 times the classical pattern, expanded over the
    // six gradient components; the two shear-gradient slots carry mu.
    const double l2 = m.length_scale * m.length_scale;
    cm.a.setZero();
    cm.a(0, 0) = cm.a(1, 1) = cm.a(2, 2) = cm.a(3, 3) = l2 * (la + 2.0 * mu);
    cm.a(0, 2) = cm.a(2, 0) = l2 * la;
    cm.a(1, 3) = cm.a(3, 1) = l2 * la;
    cm.a(4, 4) = cm.a(5, 5) = l2 * mu;
    return cm;
}

} // namespace sgefem
