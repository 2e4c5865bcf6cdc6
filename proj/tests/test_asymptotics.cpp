#include "sgefem/asymptotics.hpp"

#include "sgefem/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

using namespace sgefem;

namespace {

constexpr double kPi = 3.14159265358979323846;

MaterialParams test_material_params() {
    return make_material(1.0e9, 0.3, 0.01);
}

} // namespace

TEST(Asymptotics, SineFamiliesVanishOnLigament) {
    const QFamily f(1.8);
    const auto at = f.eval(0.37, 0.0);  // theta = 0
    EXPECT_NEAR(at.q[0][2], 0.0, 1e-15);  // Q13
    EXPECT_NEAR(at.q[0][3], 0.0, 1e-15);  // Q14
    EXPECT_NEAR(at.q[1][0], 0.0, 1e-15);  // Q21
    EXPECT_NEAR(at.q[1][1], 0.0, 1e-15);  // Q22
}

// v on the upper crack face: the closed form used for the Fig. 3 overlay
TEST(Asymptotics, CrackFaceClosedForm) {
    const double eta = 1.8;
    const QFamily f(eta);
    for (double r : {0.01, 0.3, 2.0}) {
        const auto at = f.eval(-r, 0.0);  // theta = pi on the upper face
        const double r32 = std::pow(r, 1.5);
        // K1-weighted contribution to v: Q21/4 = -(r^1.5/2)(1+eta)
        EXPECT_NEAR(at.q[1][0] / 4.0, -0.5 * r32 * (1.0 + eta), 1e-12 * r32);
        // K2-weighted contribution: Q22/4 = -(r^1.5/2)(1+eta)(5/3)
        EXPECT_NEAR(at.q[1][1] / 4.0, -0.5 * r32 * (1.0 + eta) * 5.0 / 3.0,
                    1e-12 * r32);
    }
}

TEST(Asymptotics, TipThrowsAndNodalLimitIsZero) {
    const QFamily f(2.0);
    EXPECT_THROW(f.eval(0.0, 0.0), TipSingularityError);
    double q[2][4], dq[2][4][2];
    f.eval_nodal(0.0, 0.0, q, dq);
    for (int i = 0; i < 2; ++i) {
        for (int n = 0; n < 4; ++n) {
            EXPECT_EQ(q[i][n], 0.0);
            EXPECT_EQ(dq[i][n][0], 0.0);
            EXPECT_EQ(dq[i][n][1], 0.0);
        }
    }
}

TEST(Asymptotics, DerivativesMatchFiniteDifferences) {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> rad(0.05, 2.0), ang(-3.1, 3.1),
        etad(1.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double eta = etad(rng);
        const QFamily f(eta);
        const double r = rad(rng), th = ang(rng);
        const double x = r * std::cos(th), y = r * std::sin(th);
        const double h = 1e-6 * r;
        const auto c = f.eval(x, y);
        const auto xp = f.eval(x + h, y), xm = f.eval(x - h, y);
        const auto yp = f.eval(x, y + h), ym = f.eval(x, y - h);
        for (int i = 0; i < 2; ++i) {
            for (int n = 0; n < 4; ++n) {
                const double s1 = 20.0 * std::sqrt(r);  // dq scale
                EXPECT_NEAR((xp.q[i][n] - xm.q[i][n]) / (2 * h), c.dq[i][n][0],
                            1e-6 * s1);
                EXPECT_NEAR((yp.q[i][n] - ym.q[i][n]) / (2 * h), c.dq[i][n][1],
                            1e-6 * s1);
                const double s2 = 20.0 / std::sqrt(r);  // ddq scale
                EXPECT_NEAR((xp.dq[i][n][0] - xm.dq[i][n][0]) / (2 * h),
                            c.ddq[i][n][0], 1e-6 * s2);
                EXPECT_NEAR((yp.dq[i][n][0] - ym.dq[i][n][0]) / (2 * h),
                            c.ddq[i][n][1], 1e-6 * s2);
                EXPECT_NEAR((xp.dq[i][n][1] - xm.dq[i][n][1]) / (2 * h),
                            c.ddq[i][n][1], 1e-6 * s2);
                EXPECT_NEAR((yp.dq[i][n][1] - ym.dq[i][n][1]) / (2 * h),
                            c.ddq[i][n][2], 1e-6 * s2);
            }
        }
    }
}

// r^(3/2) value scaling and r^(-1/2) second-derivative scaling
TEST(Asymptotics, RadialScalingLaws) {
    std::mt19937 rng(6);
    std::uniform_real_distribution<double> rad(0.01, 1.0), ang(-3.1, 3.1),
        etad(1.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        const QFamily f(etad(rng));
        const double r = rad(rng), th = ang(rng);
        const auto a = f.eval(r * std::cos(th), r * std::sin(th));
        const auto b = f.eval(4.0 * r * std::cos(th), 4.0 * r * std::sin(th));
        for (int i = 0; i < 2; ++i) {
            for (int n = 0; n < 4; ++n) {
                EXPECT_NEAR(b.q[i][n], 8.0 * a.q[i][n],
                            1e-12 * (8.0 * std::abs(a.q[i][n]) + 1e-3));
                for (int d = 0; d < 3; ++d) {
                    EXPECT_NEAR(b.ddq[i][n][d], 0.5 * a.ddq[i][n][d],
                                1e-12 * (std::abs(a.ddq[i][n][d]) + 1e-3));
                }
            }
        }
    }
}

TEST(Asymptotics, ModeParityUnderReflection) {
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> rad(0.05, 2.0), ang(0.05, 3.1);
    const QFamily f(1.8);
    for (int trial = 0; trial < 50; ++trial) {
        const double r = rad(rng), th = ang(rng);
        const auto up = f.eval(r * std::cos(th), r * std::sin(th));
        const auto dn = f.eval(r * std::cos(th), -r * std::sin(th));
        // even in theta: Q11, Q12, Q23, Q24; odd: Q21, Q22, Q13, Q14
        for (int n : {0, 1}) {
            EXPECT_NEAR(up.q[0][n], dn.q[0][n], 1e-13 * (1 + std::abs(up.q[0][n])));
            EXPECT_NEAR(up.q[1][n], -dn.q[1][n], 1e-13 * (1 + std::abs(up.q[1][n])));
        }
        for (int n : {2, 3}) {
            EXPECT_NEAR(up.q[0][n], -dn.q[0][n], 1e-13 * (1 + std::abs(up.q[0][n])));
            EXPECT_NEAR(up.q[1][n], dn.q[1][n], 1e-13 * (1 + std::abs(up.q[1][n])));
        }
    }
}

TEST(Asymptotics, StrainVanishesTowardTip) {
    const QFamily f(1.8);
    const double r = 1e-8 * 0.01;
    const auto at = f.eval(r * std::cos(0.7), r * std::sin(0.7));
    for (int i = 0; i < 2; ++i)
        for (int n = 0; n < 4; ++n)
            for (int d = 0; d < 2; ++d)
                EXPECT_LT(std::abs(at.dq[i][n][d]), 1e-3);
}

// Cartesian assembly of the polar classical+gradient split must match the
// direct Q-based Cartesian form for both modes
TEST(Asymptotics, PolarCartesianConsistency) {
    std::mt19937 rng(10);
    std::uniform_real_distribution<double> rad(0.02, 3.0), ang(-3.14, 3.14),
        amp(-2.0, 2.0);
    const auto m = test_material_params();
    const QFamily f(m.kolosov);
    for (int trial = 0; trial < 100; ++trial) {
        const double r = rad(rng), th = ang(rng);
        const double x = r * std::cos(th), y = r * std::sin(th);
        const auto q = f.eval(x, y);
        {
            AmplitudeFactors k;
            k.k[0] = amp(rng);
            k.k[1] = amp(rng);
            const Eigen::Vector2d p = polar_asymptotic(CrackMode::I, r, th, k, m);
            const double u = p[0] * std::cos(th) - p[1] * std::sin(th);
            const double v = p[0] * std::sin(th) + p[1] * std::cos(th);
            const double uq = (k.k[0] * q.q[0][0] + k.k[1] * q.q[0][1]) /
                              (4.0 * m.shear_modulus);
            const double vq = (k.k[0] * q.q[1][0] + k.k[1] * q.q[1][1]) /
                              (4.0 * m.shear_modulus);
            EXPECT_NEAR(u, uq, 1e-12 * (std::abs(uq) + 1e-12));
            EXPECT_NEAR(v, vq, 1e-12 * (std::abs(vq) + 1e-12));
        }
        {
            AmplitudeFactors k;
            k.k[2] = amp(rng);
            k.k[3] = amp(rng);
            const Eigen::Vector2d p = polar_asymptotic(CrackMode::II, r, th, k, m);
            const double u = p[0] * std::cos(th) - p[1] * std::sin(th);
            const double v = p[0] * std::sin(th) + p[1] * std::cos(th);
            const double uq = (k.k[2] * q.q[0][2] + k.k[3] * q.q[0][3]) /
                              (4.0 * m.shear_modulus);
            const double vq = (k.k[2] * q.q[1][2] + k.k[3] * q.q[1][3]) /
                              (4.0 * m.shear_modulus);
            EXPECT_NEAR(u, uq, 1e-12 * (std::abs(uq) + 1e-12));
            EXPECT_NEAR(v, vq, 1e-12 * (std::abs(vq) + 1e-12));
        }
    }
}

TEST(Asymptotics, ModeIPolarSymmetryRay) {
    const auto m = test_material_params();
    AmplitudeFactors k;
    k.k[0] = 1.0;
    const Eigen::Vector2d p = polar_asymptotic(CrackMode::I, 0.5, 0.0, k, m);
    EXPECT_NEAR(p[1], 0.0, 1e-15);
}

TEST(Asymptotics, ModeIIGradientPartClosedForm) {
    const auto m = test_material_params();
    AmplitudeFactors k;
    k.k[3] = 1.0;  // K4 only
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> rad(0.05, 2.0), ang(-3.1, 3.1);
    for (int trial = 0; trial < 20; ++trial) {
        const double r = rad(rng), th = ang(rng);
        const Eigen::Vector2d p = polar_asymptotic(CrackMode::II, r, th, k, m);
        const double f = std::pow(r, 1.5) / (4.0 * m.shear_modulus);
        EXPECT_NEAR(p[0], f * std::sin(0.5 * th), 1e-13 * (std::abs(p[0]) + 1e-12));
        EXPECT_NEAR(p[1], -f * std::cos(0.5 * th), 1e-13 * (std::abs(p[1]) + 1e-12));
    }
}

// the classical parts of the split satisfy the plane-strain Navier equations;
// verified with sixth-order finite differences
TEST(Asymptotics, ClassicalPartsSatisfyNavier) {
    const auto m = test_material_params();
    const double lam = m.lame_lambda, mu = m.shear_modulus;
    const double eta = m.kolosov;

    auto classical_cart = [&](CrackMode mode, double x, double y) {
        const double r = std::hypot(x, y);
        const double th = std::atan2(y, x);
        const double f = std::pow(r, 1.5) / (4.0 * mu);
        double ur, ut;
        if (mode == CrackMode::I) {
            ur = f * ((2 * eta - 3) * std::cos(th / 2) + std::cos(2.5 * th));
            ut = f * ((2 * eta + 3) * std::sin(th / 2) - std::sin(2.5 * th));
        } else {
            ur = f * ((3 - 2 * eta) * std::sin(th / 2) - 5 * std::sin(2.5 * th));
            ut = f * ((3 + 2 * eta) * std::cos(th / 2) - 5 * std::cos(2.5 * th));
        }
        return Eigen::Vector2d(ur * std::cos(th) - ut * std::sin(th),
                               ur * std::sin(th) + ut * std::cos(th));
    };

    const double stn[3] = {45.0 / 60.0, -9.0 / 60.0, 1.0 / 60.0};
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> rad(0.3, 1.5), ang(-2.7, 2.7);
    for (CrackMode mode : {CrackMode::I, CrackMode::II}) {
        for (int trial = 0; trial < 50; ++trial) {
            const double r = rad(rng), th = ang(rng);
            const double x = r * std::cos(th), y = r * std::sin(th);
            const double h = 0.01 * r;
            auto field = [&](double px, double py) { return classical_cart(mode, px, py); };
            auto d1 = [&](const std::function<double(double, double)>& g, double px,
                          double py, int dir) {
                double acc = 0.0;
                for (int s = 1; s <= 3; ++s) {
                    const double dx = (dir == 0) ? s * h : 0.0;
                    const double dy = (dir == 1) ? s * h : 0.0;
                    acc += stn[s - 1] * (g(px + dx, py + dy) - g(px - dx, py - dy));
                }
                return acc / h;
            };
            std::function<double(double, double)> comp[2] = {
                [&](double px, double py) { return field(px, py)[0]; },
                [&](double px, double py) { return field(px, py)[1]; }};
            std::function<double(double, double)> divu = [&](double px, double py) {
                return d1(comp[0], px, py, 0) + d1(comp[1], px, py, 1);
            };
            for (int c = 0; c < 2; ++c) {
                std::function<double(double, double)> gx = [&](double px, double py) {
                    return d1(comp[c], px, py, 0);
                };
                std::function<double(double, double)> gy = [&](double px, double py) {
                    return d1(comp[c], px, py, 1);
                };
                const double lapl = d1(gx, x, y, 0) + d1(gy, x, y, 1);
                const double ddiv = d1(divu, x, y, c);
                const double res = (lam + mu) * ddiv + mu * lapl;
                const double scale = mu * field(x, y).norm() / (r * r) + 1e-30;
                EXPECT_LT(std::abs(res) / scale, 1e-6)
                    << "mode " << (mode == CrackMode::I ? "I" : "II") << " r " << r
                    << " th " << th;
            }
        }
    }
}

TEST(Asymptotics, JIntegralClosedForm) {
    const auto m = test_material_params();
    {
        AmplitudeFactors k;
        const auto [j1, j2] = j_integral(k, m);
        EXPECT_EQ(j1, 0.0);
        EXPECT_EQ(j2, 0.0);
    }
    {
        AmplitudeFactors k;
        k.k[0] = 1.0;
        const auto [j1, j2] = j_integral(k, m);
        const double expect = 2.8 / (8.0 * 0.3846153846153846e9) * kPi * 1e-4 * 9.0;
        EXPECT_NEAR(j1, expect, 1e-12 * expect);
        EXPECT_EQ(j2, 0.0);
    }
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> amp(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        AmplitudeFactors k;
        for (auto& v : k.k) v = amp(rng);
        const auto [j1, j2] = j_integral(k, m);
        EXPECT_GE(j1, 0.0);
        EXPECT_GE(j2, 0.0);
        // independent route: expanded quadratic coefficients
        const double e = m.kolosov;
        const double pref = (1.0 + e) / (8.0 * m.shear_modulus) * kPi *
                            m.length_scale * m.length_scale;
        const double j1x = pref * (9.0 * k.k[0] * k.k[0] + 6.0 * k.k[0] * k.k[1] +
                                   (17.0 + 8.0 * e) * k.k[1] * k.k[1]);
        EXPECT_NEAR(j1, j1x, 1e-12 * (std::abs(j1x) + 1e-12));
    }
    MaterialParams degenerate = m;
    degenerate.kolosov = 1.0;  // the mode II expression divides by eta^2 - 1
    EXPECT_THROW(j_integral(AmplitudeFactors{}, degenerate), ParameterError);
}

TEST(Asymptotics, NormalizedJ) {
    const auto m = test_material_params();
    const double t = 1.0e6, dmin = 0.025;
    const double k0 = t * std::sqrt(kPi * dmin);
    const double j0 = k0 * k0 * (1.0 + m.kolosov) / (8.0 * m.shear_modulus);
    EXPECT_NEAR(normalized_j(j0, m, t, dmin), 1.0, 1e-14);
    EXPECT_EQ(normalized_j(0.0, m, t, dmin), 0.0);
    // plane-strain identity (1+eta)/(8 mu) = (1-nu^2)/E
    const double j0_alt = k0 * k0 * (1.0 - 0.09) / 1.0e9;
    EXPECT_NEAR(j0, j0_alt, 1e-9 * j0);
}

TEST(Asymptotics, AmplitudeConversionsInvertTheDefinitions) {
    const double eta = 1.8;
    const double k1 = -4.1692, k2 = -1.3455;
    const auto [a1, a2] = mode1_amplitudes_to_reference(k1, k2, eta);
    EXPECT_NEAR(k1, a1, 1e-15);
    EXPECT_NEAR(k2, 6.0 * (a1 - a2) / (17.0 + 8.0 * eta), 1e-12);
    const double k3 = 0.7, k4 = -1.2;
    const auto [b1, b2] = mode2_amplitudes_to_reference(k3, k4, eta);
    EXPECT_NEAR(k3, 2.0 * b2 / (13.0 + 8.0 * eta), 1e-12);
    EXPECT_NEAR(k4, b1 - 2.0 * b2 * (3.0 - 2.0 * eta) / (13.0 + 8.0 * eta), 1e-12);
}
