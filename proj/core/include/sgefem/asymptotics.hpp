#pragma once

#include "sgefem/material.hpp"

#include <Eigen/Dense>

#include <array>

namespace sgefem {

// Crack-tip coordinates: x along the ligament (ahead of the tip), y normal to
// it, theta = atan2(y, x) in (-pi, pi] so the upper crack face is theta = pi.

// Values and Cartesian derivatives of the eight r^(3/2) displacement shape
// functions Q_in (i = 1,2 for the u,v components; n = 1..4 for the amplitude
// slots). The physical displacement is u_i = 1/(4 mu) sum_n K_n Q_in.
struct AsymptoticEval {
    double q[2][4];        // values                       ~ r^(3/2)
    double dq[2][4][2];    // d/dx, d/dy                   ~ r^(1/2)
    double ddq[2][4][3];   // d2: xx, xy, yy               ~ r^(-1/2)
};

struct AmplitudeFactors {
    std::array<double, 4> k{0.0, 0.0, 0.0, 0.0};  // K1..K4 [Pa m^(-1/2)]
};

// Asymptotic field family for a fixed Kolosov constant. Construction expands
// the half-angle harmonic series of every Q_in and its first and second
// derivatives; evaluation is a table lookup plus one trig recurrence.
class QFamily {
public:
    explicit QFamily(double kolosov);

    // Throws TipSingularityError at the tip itself (the second derivatives
    // behave as r^(-1/2) there).
    AsymptoticEval eval(double x, double y) const;

    // Values and first derivatives only, with the exact tip limits
    // q = dq = 0 at r = 0. Used for the nodal subtraction terms.
    void eval_nodal(double x, double y, double q[2][4], double dq[2][4][2]) const;

    double kolosov() const { return kolosov_; }

private:
    // r^p * sum_m coef[m] * trig((2m+1) theta / 2), trig = cos or sin
    struct Series {
        double rpow = 0.0;
        bool is_cos = true;
        std::array<double, 5> coef{};  // harmonics 1,3,5,7,9
    };
    static Series deriv_x(const Series& s);
    static Series deriv_y(const Series& s);
    static double eval_series(const Series& s, double rpow_val,
                              const double* cos_tab, const double* sin_tab);

    double kolosov_;
    Series q_[2][4];
    Series dq_[2][4][2];
    Series ddq_[2][4][3];
};

AsymptoticEval q_eval(double x, double y, double kolosov);

enum class CrackMode { I, II };

// Polar-form displacement (u_r, u_theta) of the r^(3/2) asymptotic solution,
// split into classical-plus-gradient parts internally. Mode I is driven by
// (K1, K2), mode II by (K3, K4).
Eigen::Vector2d polar_asymptotic(CrackMode mode, double r, double theta,
                                 const AmplitudeFactors& k, const MaterialParams& m);

// Energy release rates from the amplitude factors (closed form).
// Throws ParameterError when eta <= 1 (the mode II expression degenerates).
std::pair<double, double> j_integral(const AmplitudeFactors& k, const MaterialParams& m);

// J normalized by the classical reference J0 = K0^2 (1+eta)/(8 mu) with
// K0 = t sqrt(pi d_min).
double normalized_j(double j, const MaterialParams& m, double load, double d_min);

// Conversions between this parametrization and the (A1, A2), (B1, B2)
// amplitudes used in the full-field literature solution.
std::array<double, 2> mode1_amplitudes_to_reference(double k1, double k2, double kolosov);
std::array<double, 2> mode2_amplitudes_to_reference(double k3, double k4, double kolosov);

} // namespace sgefem
