#include "sgefem/mesh.hpp"

#include "sgefem/bell.hpp"
#include "sgefem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>

namespace sgefem {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Builder {
    const DomainSpec& spec;
    Mesh mesh;
    double xr;       // right edge abscissa L - d
    double theta_cr; // angle of the top-right corner
    double theta_cl; // angle of the top-left corner

    explicit Builder(const DomainSpec& s) : spec(s) {
        xr = s.half_domain - s.half_crack;
        theta_cr = std::atan2(s.half_domain, xr);
        theta_cl = std::atan2(s.half_domain, -s.half_crack);
    }

    int add_node(double x, double y) {
        mesh.nodes.emplace_back(x, y);
        return static_cast<int>(mesh.nodes.size()) - 1;
    }

    // circle node with exact placement on the y = 0 axis at both ends
    int add_circle_node(double rho, double theta) {
        if (theta == 0.0) return add_node(rho, 0.0);
        if (theta == kPi) return add_node(-rho, 0.0);
        return add_node(rho * std::cos(theta), rho * std::sin(theta));
    }

    void add_tri(int a, int b, int c) {
        const auto& pa = mesh.nodes[a];
        const auto& pb = mesh.nodes[b];
        const auto& pc = mesh.nodes[c];
        const double det = (pb.x() - pa.x()) * (pc.y() - pa.y()) -
                           (pc.x() - pa.x()) * (pb.y() - pa.y());
        if (det > 0.0) {
            mesh.elements.push_back({a, b, c});
        } else {
            mesh.elements.push_back({a, c, b});
        }
    }

    // splits the (counterclockwise) quad inner0, inner1, outer1, outer0 across
    // its shorter diagonal
    void add_quad(int in0, int in1, int out1, int out0) {
        const double d1 = (mesh.nodes[in0] - mesh.nodes[out1]).squaredNorm();
        const double d2 = (mesh.nodes[in1] - mesh.nodes[out0]).squaredNorm();
        if (d1 <= d2) {
            add_tri(in0, in1, out1);
            add_tri(in0, out1, out0);
        } else {
            add_tri(in0, in1, out0);
            add_tri(in1, out1, out0);
        }
    }

    // distance from the origin to the domain boundary along direction theta
    Eigen::Vector2d exit_point(double theta) const {
        if (theta <= 0.0) return {xr, 0.0};
        if (theta >= kPi) return {-spec.half_crack, 0.0};
        if (theta == theta_cr) return {xr, spec.half_domain};
        if (theta == theta_cl) return {-spec.half_crack, spec.half_domain};
        if (theta < theta_cr) return {xr, xr * std::tan(theta)};
        if (theta > theta_cl) {
            return {-spec.half_crack, -spec.half_crack * std::tan(theta)};
        }
        return {spec.half_domain / std::tan(theta), spec.half_domain};
    }
};

} // namespace

const std::vector<int>& Mesh::tagged_nodes(BoundaryTag tag) const {
    switch (tag) {
        case BoundaryTag::CrackFace: return crack_face_nodes;
        case BoundaryTag::Ligament: return ligament_nodes;
        case BoundaryTag::LeftSymmetry: return left_symmetry_nodes;
        case BoundaryTag::Top: return top_nodes;
        case BoundaryTag::Right: return right_nodes;
    }
    throw ConfigError("unknown boundary tag");
}

std::vector<BoundaryEdge> Mesh::edges_with_tag(BoundaryTag tag) const {
    std::vector<BoundaryEdge> out;
    for (const auto& e : boundary_edges)
        if (e.tag == tag) out.push_back(e);
    return out;
}

Mesh generate_quarter_mesh(const DomainSpec& spec) {
    const double d = spec.half_crack;
    const double L = spec.half_domain;
    const double R = spec.fan_radius;
    const int M = spec.fan_count;
    const double g = spec.grading;

    if (!(d > 0.0) || !(L > d)) {
        throw MeshError("generate_quarter_mesh: need 0 < d < L");
    }
    if (M < 2 || M > 64) {
        throw MeshError("generate_quarter_mesh: fan count must be in [2, 64]");
    }
    if (!(g > 1.01) || !(g < 4.0)) {
        throw MeshError("generate_quarter_mesh: grading ratio must be in (1.01, 4)");
    }
    Builder bld(spec);
    const double geom_min = std::min({d, bld.xr, L});
    if (!(R > 0.0) || R > 0.4 * geom_min) {
        throw MeshError("generate_quarter_mesh: fan radius must satisfy "
                        "0 < R <= 0.4 min(d, L-d, L)");
    }

    // Radial ladder anchored at the web outer radius, so far-field rings do
    // not move when R is swept in convergence studies.
    const double rho_c = 0.6 * geom_min;
    std::vector<double> radii{rho_c};
    while (radii.back() / g > 1.25 * R) radii.push_back(radii.back() / g);
    radii.push_back(R);
    std::reverse(radii.begin(), radii.end());
    const int n_circles = static_cast<int>(radii.size());

    // angular counts: start at M, double while the sector arc outruns the ring
    // height, saturating at the smallest dyadic multiple of M >= 12
    int a_max = M;
    while (a_max < 12) a_max *= 2;
    std::vector<int> counts(n_circles, M);
    for (int i = 1; i < n_circles; ++i) {
        const int prev = counts[i - 1];
        const double h = radii[i] - radii[i - 1];
        const double arc = kPi * radii[i] / prev;
        counts[i] = (prev < a_max && arc > 1.4 * h) ? 2 * prev : prev;
    }
    const int a_f = counts.back();

    // nodes: tip, then circle rings inside out
    Mesh& mesh = bld.mesh;
    mesh.spec = spec;
    mesh.tip_node = bld.add_node(0.0, 0.0);

    std::vector<std::vector<int>> ring(n_circles);
    for (int i = 0; i < n_circles; ++i) {
        ring[i].resize(counts[i] + 1);
        for (int j = 0; j <= counts[i]; ++j) {
            const double theta = (j == counts[i]) ? kPi : j * kPi / counts[i];
            ring[i][j] = bld.add_circle_node(radii[i], theta);
        }
    }

    // tip fan (the enrichment candidates)
    for (int j = 0; j < M; ++j) {
        bld.add_tri(mesh.tip_node, ring[0][j], ring[0][j + 1]);
        mesh.enriched.push_back(static_cast<int>(mesh.elements.size()) - 1);
    }

    // web rings
    for (int i = 0; i + 1 < n_circles; ++i) {
        const auto& in = ring[i];
        const auto& out = ring[i + 1];
        if (counts[i + 1] == counts[i]) {
            for (int j = 0; j < counts[i]; ++j) {
                bld.add_quad(in[j], in[j + 1], out[j + 1], out[j]);
            }
        } else {
            for (int j = 0; j < counts[i]; ++j) {
                bld.add_tri(in[j], out[2 * j], out[2 * j + 1]);
                bld.add_tri(in[j], out[2 * j + 1], in[j + 1]);
                bld.add_tri(in[j + 1], out[2 * j + 1], out[2 * j + 2]);
            }
        }
    }

    // transfinite blend from the outer circle to the square boundary;
    // boundary angles snap the two rays nearest to the top corners
    std::vector<double> btheta(a_f + 1);
    for (int j = 0; j <= a_f; ++j) btheta[j] = j * kPi / a_f;
    for (double corner : {bld.theta_cr, bld.theta_cl}) {
        int best = 1;
        for (int j = 1; j < a_f; ++j) {
            if (std::abs(btheta[j] - corner) < std::abs(btheta[best] - corner)) best = j;
        }
        btheta[best] = corner;
    }
    for (int j = 0; j < a_f; ++j) {
        if (!(btheta[j] < btheta[j + 1])) {
            throw MeshError("generate_quarter_mesh: corner snapping collapsed a "
                            "boundary sector; increase the fan count or grading");
        }
    }

    std::vector<Eigen::Vector2d> bpts(a_f + 1);
    for (int j = 0; j <= a_f; ++j) bpts[j] = bld.exit_point(btheta[j]);

    // sigma ladder: continue the geometric growth of the last web ring
    const double h_last = (n_circles >= 2) ? radii[n_circles - 1] - radii[n_circles - 2]
                                           : 0.5 * R;
    double dmax = 0.0;
    for (int j = 0; j <= a_f; ++j) {
        dmax = std::max(dmax, (bpts[j] - mesh.nodes[ring[n_circles - 1][j]]).norm());
    }
    std::vector<double> sigma;
    {
        double step = g * h_last, cum = 0.0;
        while (cum < dmax) {
            cum += step;
            sigma.push_back(cum);
            step *= g;
        }
        for (double& s : sigma) s /= cum;  // last entry becomes exactly 1
        sigma.back() = 1.0;
    }

    std::vector<int> prev_ring = ring[n_circles - 1];
    for (std::size_t m = 0; m < sigma.size(); ++m) {
        std::vector<int> cur(a_f + 1);
        for (int j = 0; j <= a_f; ++j) {
            if (sigma[m] == 1.0) {
                cur[j] = bld.add_node(bpts[j].x(), bpts[j].y());
            } else {
                const Eigen::Vector2d c = mesh.nodes[ring[n_circles - 1][j]];
                const Eigen::Vector2d p = c + sigma[m] * (bpts[j] - c);
                // keep the two axis rays exactly on y = 0
                cur[j] = bld.add_node(p.x(), (j == 0 || j == a_f) ? 0.0 : p.y());
            }
        }
        for (int j = 0; j < a_f; ++j) {
            bld.add_quad(prev_ring[j], prev_ring[j + 1], cur[j + 1], cur[j]);
        }
        prev_ring = cur;
    }

    // validate all elements and conformity
    for (const auto& el : mesh.elements) {
        triangle_geometry(mesh.nodes[el[0]], mesh.nodes[el[1]], mesh.nodes[el[2]]);
    }
    std::map<std::pair<int, int>, std::pair<int, int>> edge_use;  // edge -> (count, element)
    for (int e = 0; e < static_cast<int>(mesh.elements.size()); ++e) {
        const auto& el = mesh.elements[e];
        for (int s = 0; s < 3; ++s) {
            const int n0 = el[s], n1 = el[(s + 1) % 3];
            auto key = std::minmax(n0, n1);
            auto& u = edge_use[{key.first, key.second}];
            u.first += 1;
            u.second = e;
            if (u.first > 2) {
                throw MeshError("generate_quarter_mesh: non-conforming edge");
            }
        }
    }

    // boundary tags
    const double tol = 1e-12 * L;
    for (int n = 0; n < static_cast<int>(mesh.nodes.size()); ++n) {
        const double x = mesh.nodes[n].x(), y = mesh.nodes[n].y();
        if (std::abs(y) < tol) {
            if (x < -tol) {
                mesh.crack_face_nodes.push_back(n);
            } else {
                mesh.ligament_nodes.push_back(n);
            }
        }
        if (std::abs(x + d) < tol) mesh.left_symmetry_nodes.push_back(n);
        if (std::abs(y - L) < tol) mesh.top_nodes.push_back(n);
        if (std::abs(x - bld.xr) < tol) mesh.right_nodes.push_back(n);
    }

    for (int e = 0; e < static_cast<int>(mesh.elements.size()); ++e) {
        const auto& el = mesh.elements[e];
        for (int s = 0; s < 3; ++s) {
            const int n0 = el[s], n1 = el[(s + 1) % 3];
            auto key = std::minmax(n0, n1);
            if (edge_use[{key.first, key.second}].first != 1) continue;
            const Eigen::Vector2d mid = 0.5 * (mesh.nodes[n0] + mesh.nodes[n1]);
            BoundaryEdge be;
            be.element = e;
            be.n0 = n0;
            be.n1 = n1;
            if (std::abs(mid.y()) < tol) {
                be.tag = mid.x() < 0.0 ? BoundaryTag::CrackFace : BoundaryTag::Ligament;
            } else if (std::abs(mid.x() + d) < tol) {
                be.tag = BoundaryTag::LeftSymmetry;
            } else if (std::abs(mid.y() - L) < tol) {
                be.tag = BoundaryTag::Top;
            } else if (std::abs(mid.x() - bld.xr) < tol) {
                be.tag = BoundaryTag::Right;
            } else {
                throw MeshError("generate_quarter_mesh: untagged boundary edge");
            }
            mesh.boundary_edges.push_back(be);
        }
    }
    return mesh;
}

void write_mesh(const Mesh& mesh, std::ostream& out) {
    out << "# sgefem quarter-crack mesh\n";
    out << "# node <id> <x> <y>\n";
    out << "# element <id> <n0> <n1> <n2> <enriched 0|1>\n";
    out << "# tag <name> <node ids...>\n";
    out.precision(17);
    for (std::size_t n = 0; n < mesh.nodes.size(); ++n) {
        out << "node " << n << ' ' << mesh.nodes[n].x() << ' ' << mesh.nodes[n].y()
            << '\n';
    }
    std::vector<char> enr(mesh.elements.size(), 0);
    for (int e : mesh.enriched) enr[e] = 1;
    for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
        const auto& el = mesh.elements[e];
        out << "element " << e << ' ' << el[0] << ' ' << el[1] << ' ' << el[2] << ' '
            << int(enr[e]) << '\n';
    }
    auto tag = [&](const char* name, const std::vector<int>& ids) {
        out << "tag " << name;
        for (int id : ids) out << ' ' << id;
        out << '\n';
    };
    tag("crack_face", mesh.crack_face_nodes);
    tag("ligament", mesh.ligament_nodes);
    tag("left_symmetry", mesh.left_symmetry_nodes);
    tag("top", mesh.top_nodes);
    tag("right", mesh.right_nodes);
}

void write_mesh_file(const Mesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open mesh output file: " + path);
    write_mesh(mesh, out);
}

} // namespace sgefem
