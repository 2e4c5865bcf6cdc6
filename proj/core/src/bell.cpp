#include "sgefem/bell.hpp"

#include "sgefem/errors.hpp"

#include <cmath>

namespace sgefem {

double TriangleGeometry::size() const {
    double h = 0.0;
    for (int i = 0; i < 3; ++i) {
        h = std::max(h, (nodes[(i + 1) % 3] - nodes[i]).norm());
    }
    return h;
}

TriangleGeometry triangle_geometry(const Eigen::Vector2d& n1,
                                   const Eigen::Vector2d& n2,
                                   const Eigen::Vector2d& n3) {
    TriangleGeometry g;
    g.nodes = {n1, n2, n3};
    for (int i = 0; i < 3; ++i) {
        const auto& pj = g.nodes[(i + 1) % 3];
        const auto& pk = g.nodes[(i + 2) % 3];
        g.a[i] = pj.x() * pk.y() - pk.x() * pj.y();
        g.b[i] = pj.y() - pk.y();
        g.c[i] = pk.x() - pj.x();
    }
    g.delta = (n2.x() - n1.x()) * (n3.y() - n1.y()) -
              (n3.x() - n1.x()) * (n2.y() - n1.y());
    const double h = g.size();
    if (std::abs(g.delta) < 1e-12 * h * h) {
        throw MeshError("triangle_geometry: degenerate element, |delta| = " +
                        std::to_string(std::abs(g.delta)));
    }
    return g;
}

Eigen::Vector3d areal_coords(const TriangleGeometry& g, const Eigen::Vector2d& p) {
    return (g.a + g.b * p.x() + g.c * p.y()) / g.delta;
}

Eigen::Vector2d point_from_areal(const TriangleGeometry& g, const Eigen::Vector3d& L) {
    return L[0] * g.nodes[0] + L[1] * g.nodes[1] + L[2] * g.nodes[2];
}

namespace {

// r_pq = -(d_p . d_q) / |d_p|^2 with d_i = (b_i, c_i), the unnormalized edge
// normals. This is the unique choice that keeps the quintic's normal slope
// cubic along every edge (the Bell reduction); it is validated by the
// edge-normal-slope and patch tests.
double r_coef(const Eigen::Vector3d& b, const Eigen::Vector3d& c, int p, int q) {
    return -(b[p] * b[q] + c[p] * c[q]) / (b[p] * b[p] + c[p] * c[p]);
}

} // namespace

BellBasis::BellBasis(const TriangleGeometry& g) : geom_(g) {
    const Eigen::Vector3d& b = g.b;
    const Eigen::Vector3d& c = g.c;

    // Node roles: functions 6*role..6*role+5 carry the DOFs of node `roles[0]`,
    // with the coefficient/coordinate subscripts permuted cyclically.
    static constexpr int roles[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};

    for (int nrole = 0; nrole < 3; ++nrole) {
        const int i = roles[nrole][0];
        const int j = roles[nrole][1];
        const int k = roles[nrole][2];
        const double b1 = b[i], b2 = b[j], b3 = b[k];
        const double c1 = c[i], c2 = c[j], c3 = c[k];
        const double r21 = r_coef(b, c, j, i);
        const double r31 = r_coef(b, c, k, i);

        auto put = [&](int fn, std::initializer_list<std::pair<std::array<int, 3>, double>> ts) {
            int idx = 6 * nrole + fn;
            int nt = 0;
            for (const auto& [e, coef] : ts) {
                Term t;
                std::array<std::uint8_t, 3> ee{};
                ee[i] = static_cast<std::uint8_t>(e[0]);
                ee[j] = static_cast<std::uint8_t>(e[1]);
                ee[k] = static_cast<std::uint8_t>(e[2]);
                t.e1 = ee[0];
                t.e2 = ee[1];
                t.e3 = ee[2];
                t.coef = coef;
                terms_[idx][nt++] = t;
            }
            nterms_[idx] = nt;
        };

        put(0, {{{5, 0, 0}, 1.0},
                {{4, 1, 0}, 5.0},
                {{4, 0, 1}, 5.0},
                {{3, 2, 0}, 10.0},
                {{3, 0, 2}, 10.0},
                {{3, 1, 1}, 20.0},
                {{2, 1, 2}, 30.0 * r21},
                {{2, 2, 1}, 30.0 * r31}});
        put(1, {{{4, 1, 0}, c3},
                {{4, 0, 1}, -c2},
                {{3, 2, 0}, 4.0 * c3},
                {{3, 0, 2}, -4.0 * c2},
                {{3, 1, 1}, 4.0 * (c3 - c2)},
                {{2, 1, 2}, -(3.0 * c1 + 15.0 * r21 * c2)},
                {{2, 2, 1}, 3.0 * c1 + 15.0 * r31 * c3}});
        put(2, {{{4, 1, 0}, -b3},
                {{4, 0, 1}, b2},
                {{3, 2, 0}, -4.0 * b3},
                {{3, 0, 2}, 4.0 * b2},
                {{3, 1, 1}, 4.0 * (b2 - b3)},
                {{2, 1, 2}, 3.0 * b1 + 15.0 * r21 * b2},
                {{2, 2, 1}, -(3.0 * b1 + 15.0 * r31 * b3)}});
        put(3, {{{3, 2, 0}, 0.5 * c3 * c3},
                {{3, 0, 2}, 0.5 * c2 * c2},
                {{3, 1, 1}, -c2 * c3},
                {{2, 1, 2}, c1 * c2 + 2.5 * r21 * c2 * c2},
                {{2, 2, 1}, c1 * c3 + 2.5 * r31 * c3 * c3}});
        put(4, {{{3, 2, 0}, -b3 * c3},
                {{3, 0, 2}, -b2 * c2},
                {{3, 1, 1}, b2 * c3 + b3 * c2},
                {{2, 1, 2}, -(b1 * c2 + b2 * c1 + 5.0 * r21 * b2 * c2)},
                {{2, 2, 1}, -(b1 * c3 + b3 * c1 + 5.0 * r31 * b3 * c3)}});
        put(5, {{{3, 2, 0}, 0.5 * b3 * b3},
                {{3, 0, 2}, 0.5 * b2 * b2},
                {{3, 1, 1}, -b2 * b3},
                {{2, 1, 2}, b1 * b2 + 2.5 * r21 * b2 * b2},
                {{2, 2, 1}, b1 * b3 + 2.5 * r31 * b3 * b3}});
    }
}

ShapeEval BellBasis::eval(const Eigen::Vector3d& L) const {
    // powers of the areal coordinates up to degree 5
    double P[3][6];
    for (int i = 0; i < 3; ++i) {
        P[i][0] = 1.0;
        for (int p = 1; p <= 5; ++p) P[i][p] = P[i][p - 1] * L[i];
    }

    ShapeEval out;
    const Eigen::Vector3d& b = geom_.b;
    const Eigen::Vector3d& c = geom_.c;
    const double inv_d = 1.0 / geom_.delta;
    const double inv_d2 = inv_d * inv_d;

    for (int f = 0; f < 18; ++f) {
        double v = 0.0;
        Eigen::Vector3d g = Eigen::Vector3d::Zero();
        Eigen::Matrix3d H = Eigen::Matrix3d::Zero();
        for (int t = 0; t < nterms_[f]; ++t) {
            const Term& tm = terms_[f][t];
            const int e[3] = {tm.e1, tm.e2, tm.e3};
            const double C = tm.coef;
            v += C * P[0][e[0]] * P[1][e[1]] * P[2][e[2]];
            for (int u = 0; u < 3; ++u) {
                if (e[u] == 0) continue;
                double gu = C * e[u] * P[u][e[u] - 1];
                for (int w = 0; w < 3; ++w)
                    if (w != u) gu *= P[w][e[w]];
                g[u] += gu;
                // diagonal second derivative
                if (e[u] >= 2) {
                    double hu = C * e[u] * (e[u] - 1) * P[u][e[u] - 2];
                    for (int w = 0; w < 3; ++w)
                        if (w != u) hu *= P[w][e[w]];
                    H(u, u) += hu;
                }
                // mixed second derivatives (count each unordered pair once)
                for (int w = u + 1; w < 3; ++w) {
                    if (e[w] == 0) continue;
                    double hm = C * e[u] * e[w] * P[u][e[u] - 1] * P[w][e[w] - 1];
                    const int other = 3 - u - w;
                    hm *= P[other][e[other]];
                    H(u, w) += hm;
                    H(w, u) += hm;
                }
            }
        }
        out.n[f] = v;
        out.dn(f, 0) = b.dot(g) * inv_d;
        out.dn(f, 1) = c.dot(g) * inv_d;
        const Eigen::Vector3d Hb = H * b;
        const Eigen::Vector3d Hc = H * c;
        out.ddn(f, 0) = b.dot(Hb) * inv_d2;
        out.ddn(f, 1) = c.dot(Hb) * inv_d2;
        out.ddn(f, 2) = c.dot(Hc) * inv_d2;
    }
    return out;
}

ShapeEval shape_eval(const TriangleGeometry& g, const Eigen::Vector3d& L) {
    return BellBasis(g).eval(L);
}

} // namespace sgefem
