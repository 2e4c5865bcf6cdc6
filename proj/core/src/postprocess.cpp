#include "sgefem/postprocess.hpp"

#include "sgefem/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sgefem {

FieldEvaluator::FieldEvaluator(const Mesh& mesh, const MaterialParams& material,
                               const Solution& solution, bool enrichment_active)
    : mesh_(mesh),
      material_(material),
      cm_(constitutive_matrices(material)),
      solution_(solution),
      family_(material.kolosov) {
    enriched_flag_.assign(mesh.element_count(), 0);
    if (enrichment_active) {
        for (int e : mesh_.enriched) enriched_flag_[e] = 1;
    }
}

int FieldEvaluator::locate(const Eigen::Vector2d& p) const {
    for (std::size_t e = 0; e < mesh_.element_count(); ++e) {
        const auto& el = mesh_.elements[e];
        const TriangleGeometry g = triangle_geometry(
            mesh_.nodes[el[0]], mesh_.nodes[el[1]], mesh_.nodes[el[2]]);
        const Eigen::Vector3d L = areal_coords(g, p);
        if (L.minCoeff() >= -1e-12 && L.maxCoeff() <= 1.0 + 1e-12) {
            return static_cast<int>(e);
        }
    }
    return -1;
}

FieldSample FieldEvaluator::evaluate(const Eigen::Vector2d& p) const {
    const int e = locate(p);
    if (e < 0) {
        throw MeshError("evaluate: point (" + std::to_string(p.x()) + ", " +
                        std::to_string(p.y()) + ") lies outside the mesh");
    }
    return evaluate_in(e, p);
}

FieldSample FieldEvaluator::evaluate_in(int element, const Eigen::Vector2d& p) const {
    const auto& el = mesh_.elements[element];
    const TriangleGeometry g = triangle_geometry(
        mesh_.nodes[el[0]], mesh_.nodes[el[1]], mesh_.nodes[el[2]]);
    const Eigen::Vector3d L = areal_coords(g, p);
    const ShapeEval sh = shape_eval(g, L);

    Eigen::Matrix<double, 36, 1> nodal;
    for (int node = 0; node < 3; ++node)
        for (int m = 0; m < 12; ++m)
            nodal[12 * node + m] = solution_.u[12 * el[node] + m];

    InterpolatedField field;
    if (enriched_flag_[element]) {
        const EnrichedBasis eb(g, mesh_.nodes[mesh_.tip_node], family_);
        const EnrichedEval en = eb.eval(L, sh);
        field = enriched_interpolation(nodal, solution_.k, &en, sh,
                                       material_.shear_modulus);
    } else {
        field = enriched_interpolation(nodal, solution_.k, nullptr, sh,
                                       material_.shear_modulus);
    }

    FieldSample out;
    out.point = p;
    out.u = field.u;
    out.v = field.v;
    out.strain = {field.du[0], field.dv[1], field.du[1] + field.dv[0]};
    out.cauchy = cm_.c * out.strain;
    Eigen::Matrix<double, 6, 1> kappa;
    kappa << field.ddu[0], field.ddu[1], field.ddv[1], field.ddv[2],
        field.ddu[1] + field.ddv[0], field.ddu[2] + field.ddv[1];
    out.double_stress = cm_.a * kappa;
    return out;
}

std::vector<std::pair<double, double>> crack_opening_profile(
    const FieldEvaluator& eval, const Mesh& mesh, int samples) {
    const double d = mesh.spec.half_crack;
    const double r = mesh.spec.fan_radius;
    std::vector<double> xs;
    const int n_lin = std::max(2, samples / 2);
    const int n_log = std::max(2, samples - n_lin);
    for (int i = 0; i < n_lin; ++i) {
        // linear sweep of the face, excluding the tip itself
        xs.push_back(-d + (d - d / n_lin) * i / (n_lin - 1.0));
    }
    const double lo = std::min(r / 100.0, d / 1000.0), hi = d;
    for (int i = 0; i < n_log; ++i) {
        xs.push_back(-lo * std::pow(hi / lo, i / (n_log - 1.0)));
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<std::pair<double, double>> out;
    out.reserve(xs.size());
    for (double x : xs) {
        if (x >= 0.0) continue;
        out.emplace_back(x, eval.evaluate({x, 0.0}).v);
    }
    return out;
}

double tip_kt(const Mesh& mesh, const MaterialParams& material,
              const Solution& solution, CrackMode mode, double load) {
    const int tip = mesh.tip_node;
    const double ux = solution.u[12 * tip + kUx];
    const double uy = solution.u[12 * tip + kUy];
    const double vx = solution.u[12 * tip + kVx];
    const double vy = solution.u[12 * tip + kVy];
    const Eigen::Vector3d strain{ux, vy, uy + vx};
    const Eigen::Vector3d tau = constitutive_matrices(material).c * strain;
    return (mode == CrackMode::I ? tau[1] : tau[2]) / load;
}

double enrichment_jump_norm(const Mesh& mesh, const MaterialParams& material,
                            const Solution& solution) {
    // the fan rim: edges of enriched elements not touching the tip node
    const QFamily family(material.kolosov);
    const double s = 1.0 / (4.0 * material.shear_modulus);
    double jump2 = 0.0, base2 = 0.0;
    const FieldEvaluator eval(mesh, material, solution, true);
    for (int e : mesh.enriched) {
        const auto& el = mesh.elements[e];
        const TriangleGeometry g = triangle_geometry(
            mesh.nodes[el[0]], mesh.nodes[el[1]], mesh.nodes[el[2]]);
        int la = -1, lb = -1;
        for (int sdx = 0; sdx < 3; ++sdx) {
            if (el[sdx] != mesh.tip_node && el[(sdx + 1) % 3] != mesh.tip_node) {
                la = sdx;
                lb = (sdx + 1) % 3;
            }
        }
        if (la < 0) continue;
        const EnrichedBasis eb(g, mesh.nodes[mesh.tip_node], family);
        const double len = (g.nodes[lb] - g.nodes[la]).norm();
        const int n_q = 8;
        for (int q = 0; q < n_q; ++q) {
            const double xi = (q + 0.5) / n_q;
            Eigen::Vector3d L = Eigen::Vector3d::Zero();
            L[la] = 1.0 - xi;
            L[lb] = xi;
            const ShapeEval sh = shape_eval(g, L);
            const EnrichedEval en = eb.eval(L, sh);
            double ju = 0.0, jv = 0.0;
            for (int n = 0; n < 4; ++n) {
                ju += s * solution.k.k[n] * en.qstar[0][n];
                jv += s * solution.k.k[n] * en.qstar[1][n];
            }
            const Eigen::Vector2d p = point_from_areal(g, L);
            const FieldSample f = eval.evaluate_in(e, p);
            const double w = len / n_q;
            jump2 += w * (ju * ju + jv * jv);
            base2 += w * (f.u * f.u + f.v * f.v);
        }
    }
    return (base2 > 0.0) ? std::sqrt(jump2 / base2) : 0.0;
}

CaseSummary summarize_case(const Mesh& mesh, const MaterialParams& material,
                           const Solution& solution, CrackMode mode, double load,
                           double d_min, bool enrichment_active) {
    CaseSummary cs;
    cs.k = solution.k;
    const auto [j1, j2] = j_integral(solution.k, material);
    cs.j = (mode == CrackMode::I) ? j1 : j2;
    cs.j_normalized = normalized_j(cs.j, material, load, d_min);
    cs.kt = tip_kt(mesh, material, solution, mode, load);
    cs.enrichment_jump =
        enrichment_active ? enrichment_jump_norm(mesh, material, solution) : 0.0;
    cs.report = solution.report;
    cs.n_nodes = static_cast<int>(mesh.node_count());
    cs.n_elements = static_cast<int>(mesh.element_count());
    cs.n_enriched = enrichment_active ? static_cast<int>(mesh.enriched.size()) : 0;
    return cs;
}

} // namespace sgefem
