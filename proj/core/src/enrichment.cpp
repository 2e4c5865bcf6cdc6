#include "sgefem/enrichment.hpp"

#include "sgefem/errors.hpp"

namespace sgefem {

EnrichedBasis::EnrichedBasis(const TriangleGeometry& g, const Eigen::Vector2d& tip,
                             const QFamily& family)
    : geom_(g), tip_(tip), family_(family) {
    const double h = g.size();
    for (int j = 0; j < 3; ++j) {
        if ((g.nodes[j] - tip).norm() < 1e-9 * h) {
            tip_local_ = j;
            break;
        }
    }
    if (tip_local_ < 0) {
        throw EnrichmentError("enrichment: the crack tip must be a node of the "
                              "enriched element");
    }
    for (int j = 0; j < 3; ++j) {
        const Eigen::Vector2d off = g.nodes[j] - tip;
        if (j == tip_local_) {
            family.eval_nodal(0.0, 0.0, nq_[j], ndq_[j]);
        } else {
            family.eval_nodal(off.x(), off.y(), nq_[j], ndq_[j]);
        }
    }
}

EnrichedEval EnrichedBasis::eval(const Eigen::Vector3d& L,
                                 const ShapeEval& shapes) const {
    const Eigen::Vector2d p = point_from_areal(geom_, L) - tip_;
    const AsymptoticEval at = family_.eval(p.x(), p.y());

    EnrichedEval out;
    for (int i = 0; i < 2; ++i) {
        for (int n = 0; n < 4; ++n) {
            double v = at.q[i][n];
            double vx = at.dq[i][n][0];
            double vy = at.dq[i][n][1];
            double vxx = at.ddq[i][n][0];
            double vxy = at.ddq[i][n][1];
            double vyy = at.ddq[i][n][2];
            for (int j = 0; j < 3; ++j) {
                // subset shape functions carrying the value, d/dx and d/dy
                // DOFs of node j
                const int f0 = 6 * j, f1 = 6 * j + 1, f2 = 6 * j + 2;
                const double cj[3] = {nq_[j][i][n], ndq_[j][i][n][0], ndq_[j][i][n][1]};
                const int fs[3] = {f0, f1, f2};
                for (int t = 0; t < 3; ++t) {
                    v -= cj[t] * shapes.n[fs[t]];
                    vx -= cj[t] * shapes.dn(fs[t], 0);
                    vy -= cj[t] * shapes.dn(fs[t], 1);
                    vxx -= cj[t] * shapes.ddn(fs[t], 0);
                    vxy -= cj[t] * shapes.ddn(fs[t], 1);
                    vyy -= cj[t] * shapes.ddn(fs[t], 2);
                }
            }
            out.qstar[i][n] = v;
            out.dqstar[i][n][0] = vx;
            out.dqstar[i][n][1] = vy;
            out.ddqstar[i][n][0] = vxx;
            out.ddqstar[i][n][1] = vxy;
            out.ddqstar[i][n][2] = vyy;
        }
    }
    return out;
}

EnrichedEval enriched_eval(const TriangleGeometry& g, const Eigen::Vector2d& tip,
                           const Eigen::Vector3d& L, double kolosov) {
    const QFamily family(kolosov);
    const EnrichedBasis basis(g, tip, family);
    return basis.eval(L, shape_eval(g, L));
}

InterpolatedField enriched_interpolation(const Eigen::Matrix<double, 36, 1>& nodal,
                                         const AmplitudeFactors& k,
                                         const EnrichedEval* enriched,
                                         const ShapeEval& shapes,
                                         double shear_modulus) {
    InterpolatedField out;
    for (int node = 0; node < 3; ++node) {
        for (int m = 0; m < 6; ++m) {
            const int f = 6 * node + m;
            const double du = nodal[12 * node + m];
            const double dv = nodal[12 * node + 6 + m];
            out.u += du * shapes.n[f];
            out.v += dv * shapes.n[f];
            for (int d = 0; d < 2; ++d) {
                out.du[d] += du * shapes.dn(f, d);
                out.dv[d] += dv * shapes.dn(f, d);
            }
            for (int d = 0; d < 3; ++d) {
                out.ddu[d] += du * shapes.ddn(f, d);
                out.ddv[d] += dv * shapes.ddn(f, d);
            }
        }
    }
    if (enriched != nullptr) {
        const double s = 1.0 / (4.0 * shear_modulus);
        for (int n = 0; n < 4; ++n) {
            const double kn = s * k.k[n];
            out.u += kn * enriched->qstar[0][n];
            out.v += kn * enriched->qstar[1][n];
            for (int d = 0; d < 2; ++d) {
                out.du[d] += kn * enriched->dqstar[0][n][d];
                out.dv[d] += kn * enriched->dqstar[1][n][d];
            }
            for (int d = 0; d < 3; ++d) {
                out.ddu[d] += kn * enriched->ddqstar[0][n][d];
                out.ddv[d] += kn * enriched->ddqstar[1][n][d];
            }
        }
    }
    return out;
}

} // namespace sgefem
