#include "sgefem/material.hpp"

#include "sgefem/errors.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sgefem;

TEST(Material, DerivedConstants) {
    const auto m = make_material(1.0e9, 0.3, 0.01);
    EXPECT_NEAR(m.kolosov, 1.8, 1e-15);
    EXPECT_NEAR(m.shear_modulus, 0.3846153846153846e9, 1.0);
    EXPECT_NEAR(m.lame_lambda, 0.5769230769230769e9, 1.0);
}

TEST(Material, ZeroPoissonDecouplesLambda) {
    const auto m = make_material(1.0, 0.0, 0.0);
    EXPECT_DOUBLE_EQ(m.lame_lambda, 0.0);
    EXPECT_DOUBLE_EQ(m.shear_modulus, 0.5);
    EXPECT_DOUBLE_EQ(m.kolosov, 3.0);
}

TEST(Material, RejectsOutOfRange) {
    EXPECT_THROW(make_material(-1.0, 0.3, 0.0), ParameterError);
    EXPECT_THROW(make_material(0.0, 0.3, 0.0), ParameterError);
    EXPECT_THROW(make_material(1.0, 0.5, 0.0), ParameterError);
    EXPECT_THROW(make_material(1.0, -0.1, 0.0), ParameterError);
    EXPECT_THROW(make_material(1.0, 0.3, -1e-6), ParameterError);
}

TEST(Material, ConstitutiveMatrixPattern) {
    const auto m = make_material(1.0e9, 0.3, 0.01);
    const auto cm = constitutive_matrices(m);
    EXPECT_NEAR(cm.c(0, 0), 1.346153846153846e9, 1.0);
    EXPECT_NEAR(cm.c(1, 1), m.lame_lambda + 2.0 * m.shear_modulus, 1.0);
    EXPECT_NEAR(cm.c(2, 2), m.shear_modulus, 1.0);
    EXPECT_NEAR(cm.c(0, 1), m.lame_lambda, 1.0);
    EXPECT_TRUE(cm.c.isApprox(cm.c.transpose()));
    EXPECT_TRUE(cm.a.isApprox(cm.a.transpose()));
}

TEST(Material, ZeroLengthScaleKillsGradientStiffness) {
    const auto cm = constitutive_matrices(make_material(2.0e9, 0.25, 0.0));
    EXPECT_EQ(cm.a.norm(), 0.0);
}

TEST(Material, QuadraticFormsNonnegative) {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::uniform_real_distribution<double> nu_dist(0.0, 0.49);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = make_material(1.0 + 9.0 * std::abs(unif(rng)), nu_dist(rng),
                                     std::abs(unif(rng)));
        const auto cm = constitutive_matrices(m);
        Eigen::Vector3d eps;
        Eigen::Matrix<double, 6, 1> kappa;
        for (int i = 0; i < 3; ++i) eps[i] = unif(rng);
        for (int i = 0; i < 6; ++i) kappa[i] = unif(rng);
        EXPECT_GE(eps.dot(cm.c * eps), 0.0);
        EXPECT_GE(kappa.dot(cm.a * kappa), -1e-18);
    }
}

// a kappa must equal ell^2 times the classical map applied per gradient
// direction, i.e. the double stress is ell^2 times the Cauchy stress gradient.
TEST(Material, DoubleStressConsistency) {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const auto m = make_material(3.0e9, 0.27, 0.4);
    const auto cm = constitutive_matrices(m);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::Matrix<double, 6, 1> kappa;
        for (int i = 0; i < 6; ++i) kappa[i] = unif(rng);
        const Eigen::Matrix<double, 6, 1> mu = cm.a * kappa;
        const Eigen::Vector3d grad1{kappa[0], kappa[2], kappa[4]};  // d/dx of strain
        const Eigen::Vector3d grad2{kappa[1], kappa[3], kappa[5]};  // d/dy of strain
        const Eigen::Vector3d tau1 = cm.c * grad1;
        const Eigen::Vector3d tau2 = cm.c * grad2;
        const double l2 = m.length_scale * m.length_scale;
        EXPECT_NEAR(mu[0], l2 * tau1[0], 1e-6 * std::abs(l2 * tau1[0]) + 1e-12);
        EXPECT_NEAR(mu[1], l2 * tau2[0], 1e-6 * std::abs(l2 * tau2[0]) + 1e-12);
        EXPECT_NEAR(mu[2], l2 * tau1[1], 1e-6 * std::abs(l2 * tau1[1]) + 1e-12);
        EXPECT_NEAR(mu[3], l2 * tau2[1], 1e-6 * std::abs(l2 * tau2[1]) + 1e-12);
        EXPECT_NEAR(mu[4], l2 * tau1[2], 1e-6 * std::abs(l2 * tau1[2]) + 1e-12);
        EXPECT_NEAR(mu[5], l2 * tau2[2], 1e-6 * std::abs(l2 * tau2[2]) + 1e-12);
    }
}
