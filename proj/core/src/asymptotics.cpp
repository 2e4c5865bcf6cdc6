#include "sgefem/asymptotics.hpp"

#include "sgefem/errors.hpp"

#include <cmath>

namespace sgefem {

namespace {

constexpr double kPi = 3.14159265358979323846;

// fold a harmonic index k (possibly negative) into the storage slot (2m+1 -> m)
// cos(-k t/2) = cos(k t/2); sin(-k t/2) = -sin(k t/2)
void add_harmonic(std::array<double, 5>& coef, bool is_cos, int k, double v) {
    double sign = 1.0;
    if (k < 0) {
        k = -k;
        if (!is_cos) sign = -1.0;
    }
    if (k == 0 || v == 0.0) return;  // k is always odd here; 0 cannot occur
    coef[(k - 1) / 2] += sign * v;
}

} // namespace

QFamily::Series QFamily::deriv_x(const Series& s) {
    Series out;
    out.rpow = s.rpow - 1.0;
    out.is_cos = s.is_cos;
    const double p = s.rpow;
    for (int m = 0; m < 5; ++m) {
        const double c = s.coef[m];
        if (c == 0.0) continue;
        const int k = 2 * m + 1;
        add_harmonic(out.coef, out.is_cos, k - 2, c * (2.0 * p + k) / 4.0);
        add_harmonic(out.coef, out.is_cos, k + 2, c * (2.0 * p - k) / 4.0);
    }
    return out;
}

QFamily::Series QFamily::deriv_y(const Series& s) {
    Series out;
    out.rpow = s.rpow - 1.0;
    out.is_cos = !s.is_cos;
    const double p = s.rpow;
    for (int m = 0; m < 5; ++m) {
        const double c = s.coef[m];
        if (c == 0.0) continue;
        const int k = 2 * m + 1;
        if (s.is_cos) {
            // d/dy maps cos -> sin
            add_harmonic(out.coef, false, k - 2, -c * (2.0 * p + k) / 4.0);
            add_harmonic(out.coef, false, k + 2, c * (2.0 * p - k) / 4.0);
        } else {
            // d/dy maps sin -> cos
            add_harmonic(out.coef, true, k - 2, c * (2.0 * p + k) / 4.0);
            add_harmonic(out.coef, true, k + 2, -c * (2.0 * p - k) / 4.0);
        }
    }
    return out;
}

QFamily::QFamily(double kolosov) : kolosov_(kolosov) {
    const double e = kolosov;
    auto series = [](bool is_cos, double c1, double c3, double c5) {
        Series s;
        s.rpow = 1.5;
        s.is_cos = is_cos;
        s.coef = {c1, c3, c5, 0.0, 0.0};
        return s;
    };
    // half-angle harmonic coefficients of the printed trigonometric forms
    q_[0][0] = series(true, -3.0, 1.0 + 2.0 * e, 0.0);
    q_[0][1] = series(true, 2.0 * e, -(17.0 + 8.0 * e) / 6.0, -0.5);
    q_[0][2] = series(false, -3.0 * (1.0 + 2.0 * e), (13.0 + 4.0 * e) / 2.0, 1.5);
    q_[0][3] = series(false, 0.0, 1.0, 0.0);
    q_[1][0] = series(false, -3.0, 2.0 * e - 1.0, 0.0);
    q_[1][1] = series(false, -2.0 * e, (17.0 + 8.0 * e) / 6.0, -0.5);
    q_[1][2] = series(true, 3.0 * (1.0 - 2.0 * e), (13.0 + 12.0 * e) / 2.0, -1.5);
    q_[1][3] = series(true, 0.0, -1.0, 0.0);

    for (int i = 0; i < 2; ++i) {
        for (int n = 0; n < 4; ++n) {
            dq_[i][n][0] = deriv_x(q_[i][n]);
            dq_[i][n][1] = deriv_y(q_[i][n]);
            ddq_[i][n][0] = deriv_x(dq_[i][n][0]);
            ddq_[i][n][1] = deriv_y(dq_[i][n][0]);
            ddq_[i][n][2] = deriv_y(dq_[i][n][1]);
        }
    }
}

double QFamily::eval_series(const Series& s, double rpow_val,
                            const double* cos_tab, const double* sin_tab) {
    const double* t = s.is_cos ? cos_tab : sin_tab;
    double acc = 0.0;
    for (int m = 0; m < 5; ++m) acc += s.coef[m] * t[m];
    return rpow_val * acc;
}

AsymptoticEval QFamily::eval(double x, double y) const {
    const double r = std::hypot(x, y);
    if (r == 0.0) {
        throw TipSingularityError(
            "q_eval: derivatives are singular at the crack tip itself");
    }
    const double theta = std::atan2(y, x);
    const double h = 0.5 * theta;
    double cos_tab[5], sin_tab[5];
    cos_tab[0] = std::cos(h);
    sin_tab[0] = std::sin(h);
    const double two_cos = 2.0 * std::cos(theta);
    // Chebyshev-style recurrence over odd half-angle harmonics
    cos_tab[1] = two_cos * cos_tab[0] - cos_tab[0];
    sin_tab[1] = two_cos * sin_tab[0] + sin_tab[0];
    for (int m = 2; m < 5; ++m) {
        cos_tab[m] = two_cos * cos_tab[m - 1] - cos_tab[m - 2];
        sin_tab[m] = two_cos * sin_tab[m - 1] - sin_tab[m - 2];
    }
    const double sq = std::sqrt(r);
    const double r32 = r * sq, r12 = sq, rm12 = 1.0 / sq;

    AsymptoticEval out;
    for (int i = 0; i < 2; ++i) {
        for (int n = 0; n < 4; ++n) {
            out.q[i][n] = eval_series(q_[i][n], r32, cos_tab, sin_tab);
            out.dq[i][n][0] = eval_series(dq_[i][n][0], r12, cos_tab, sin_tab);
            out.dq[i][n][1] = eval_series(dq_[i][n][1], r12, cos_tab, sin_tab);
            for (int d = 0; d < 3; ++d) {
                out.ddq[i][n][d] = eval_series(ddq_[i][n][d], rm12, cos_tab, sin_tab);
            }
        }
    }
    return out;
}

void QFamily::eval_nodal(double x, double y, double q[2][4], double dq[2][4][2]) const {
    if (x == 0.0 && y == 0.0) {
        for (int i = 0; i < 2; ++i)
            for (int n = 0; n < 4; ++n)
                q[i][n] = dq[i][n][0] = dq[i][n][1] = 0.0;
        return;
    }
    const AsymptoticEval full = eval(x, y);
    for (int i = 0; i < 2; ++i) {
        for (int n = 0; n < 4; ++n) {
            q[i][n] = full.q[i][n];
            dq[i][n][0] = full.dq[i][n][0];
            dq[i][n][1] = full.dq[i][n][1];
        }
    }
}

AsymptoticEval q_eval(double x, double y, double kolosov) {
    return QFamily(kolosov).eval(x, y);
}

Eigen::Vector2d polar_asymptotic(CrackMode mode, double r, double theta,
                                 const AmplitudeFactors& k, const MaterialParams& m) {
    const double e = m.kolosov;
    const double f = std::pow(r, 1.5) / (4.0 * m.shear_modulus);
    const double h = 0.5 * theta;
    double ur = 0.0, ut = 0.0;
    if (mode == CrackMode::I) {
        const double K1 = k.k[0], K2 = k.k[1];
        // classical Williams r^(3/2) part
        ur += K1 * ((2.0 * e - 3.0) * std::cos(h) + std::cos(5.0 * h));
        ut += K1 * ((2.0 * e + 3.0) * std::sin(h) - std::sin(5.0 * h));
        // gradient part
        ur += K2 * (0.5 * (4.0 * e - 1.0) * std::cos(3.0 * h) -
                    (8.0 * e + 17.0) / 6.0 * std::cos(5.0 * h));
        ut += K2 * (-0.5 * (4.0 * e + 1.0) * std::sin(3.0 * h) +
                    (8.0 * e + 17.0) / 6.0 * std::sin(5.0 * h));
    } else {
        const double K3 = k.k[2], K4 = k.k[3];
        ur += K3 * ((3.0 - 2.0 * e) * std::sin(h) - 5.0 * std::sin(5.0 * h));
        ut += K3 * ((3.0 + 2.0 * e) * std::cos(h) - 5.0 * std::cos(5.0 * h));
        ur += K4 * std::sin(h) +
              K3 * (1.5 * (1.0 - 4.0 * e) * std::sin(3.0 * h) +
                    0.5 * (23.0 + 8.0 * e) * std::sin(5.0 * h));
        ut += -K4 * std::cos(h) -
              K3 * (1.5 * (1.0 + 4.0 * e) * std::cos(3.0 * h) -
                    0.5 * (23.0 + 8.0 * e) * std::cos(5.0 * h));
    }
    return {f * ur, f * ut};
}

std::pair<double, double> j_integral(const AmplitudeFactors& k, const MaterialParams& m) {
    const double e = m.kolosov;
    if (e <= 1.0) {
        throw ParameterError("j_integral: Kolosov constant must exceed 1");
    }
    const double l2 = m.length_scale * m.length_scale;
    const double pref = (1.0 + e) / (8.0 * m.shear_modulus) * kPi * l2;
    const double s1 = 3.0 * k.k[0] + k.k[1];
    const double j1 = pref * (s1 * s1 + 8.0 * k.k[1] * k.k[1] * (e + 2.0));
    const double j2 = pref * (72.0 * k.k[2] * k.k[2] * (e + 2.0) +
                              9.0 * k.k[3] * k.k[3] / (4.0 * (e * e - 1.0)));
    return {j1, j2};
}

double normalized_j(double j, const MaterialParams& m, double load, double d_min) {
    const double k0 = load * std::sqrt(kPi * d_min);
    const double j0 = k0 * k0 * (1.0 + m.kolosov) / (8.0 * m.shear_modulus);
    return j / j0;
}

std::array<double, 2> mode1_amplitudes_to_reference(double k1, double k2, double kolosov) {
    // K1 = A1, K2 = 6 (A1 - A2) / (17 + 8 eta)
    const double a1 = k1;
    const double a2 = a1 - k2 * (17.0 + 8.0 * kolosov) / 6.0;
    return {a1, a2};
}

std::array<double, 2> mode2_amplitudes_to_reference(double k3, double k4, double kolosov) {
    // K3 = 2 B2 / (13 + 8 eta), K4 = B1 - 2 B2 (3 - 2 eta) / (13 + 8 eta)
    const double b2 = 0.5 * k3 * (13.0 + 8.0 * kolosov);
    const double b1 = k4 + k3 * (3.0 - 2.0 * kolosov);
    return {b1, b2};
}

} // namespace sgefem
