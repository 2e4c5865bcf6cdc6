#include "sgefem/mesh.hpp"

#include "sgefem/bell.hpp"
#include "sgefem/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

using namespace sgefem;

namespace {

constexpr double kPi = 3.14159265358979323846;

DomainSpec default_spec() {
    DomainSpec s;
    s.half_crack = 0.2;
    s.half_domain = 1.0;
    s.fan_radius = 0.002;
    s.fan_count = 5;
    s.grading = 1.3;
    return s;
}

std::set<std::pair<int, int>> edge_set(const Mesh& mesh) {
    std::set<std::pair<int, int>> edges;
    for (const auto& el : mesh.elements) {
        for (int s = 0; s < 3; ++s) {
            const int a = el[s], b = el[(s + 1) % 3];
            edges.insert({std::min(a, b), std::max(a, b)});
        }
    }
    return edges;
}

} // namespace

TEST(Mesh, FanLayout) {
    const auto spec = default_spec();
    const auto mesh = generate_quarter_mesh(spec);
    ASSERT_EQ(static_cast<int>(mesh.enriched.size()), spec.fan_count);
    // every fan element touches the tip and spans an equal angle
    for (int idx = 0; idx < spec.fan_count; ++idx) {
        const auto& el = mesh.elements[mesh.enriched[idx]];
        int tip_local = -1;
        for (int s = 0; s < 3; ++s)
            if (el[s] == mesh.tip_node) tip_local = s;
        ASSERT_GE(tip_local, 0);
        const Eigen::Vector2d a = mesh.nodes[el[(tip_local + 1) % 3]];
        const Eigen::Vector2d b = mesh.nodes[el[(tip_local + 2) % 3]];
        EXPECT_NEAR(a.norm(), spec.fan_radius, 1e-14 * spec.fan_radius);
        EXPECT_NEAR(b.norm(), spec.fan_radius, 1e-14 * spec.fan_radius);
        const double ang = std::acos(
            std::clamp(a.dot(b) / (a.norm() * b.norm()), -1.0, 1.0));
        EXPECT_NEAR(ang, kPi / spec.fan_count, 1e-12);
    }
    // fan rim on the half circle: M+1 boundary nodes
    int rim = 0;
    for (const auto& n : mesh.nodes) {
        if (std::abs(n.norm() - spec.fan_radius) < 1e-12 * spec.fan_radius) ++rim;
    }
    EXPECT_EQ(rim, spec.fan_count + 1);
}

TEST(Mesh, AllElementsPositiveAndConforming) {
    const auto mesh = generate_quarter_mesh(default_spec());
    for (const auto& el : mesh.elements) {
        const auto g = triangle_geometry(mesh.nodes[el[0]], mesh.nodes[el[1]],
                                         mesh.nodes[el[2]]);
        EXPECT_GT(g.delta, 0.0);
    }
    // disk topology Euler characteristic: V - E + F = 1 (without the outer face)
    const auto edges = edge_set(mesh);
    const long chi = static_cast<long>(mesh.node_count()) -
                     static_cast<long>(edges.size()) +
                     static_cast<long>(mesh.element_count());
    EXPECT_EQ(chi, 1);
    // conformity: interior edges shared by exactly two elements
    std::map<std::pair<int, int>, int> count;
    for (const auto& el : mesh.elements) {
        for (int s = 0; s < 3; ++s) {
            const int a = el[s], b = el[(s + 1) % 3];
            count[{std::min(a, b), std::max(a, b)}]++;
        }
    }
    for (const auto& [e, c] : count) {
        EXPECT_GE(c, 1);
        EXPECT_LE(c, 2);
    }
}

TEST(Mesh, BoundaryTagsCoverBoundaryWithCornerOverlapsOnly) {
    const auto spec = default_spec();
    const auto mesh = generate_quarter_mesh(spec);
    const double L = spec.half_domain, d = spec.half_crack;
    const double xr = L - d;
    const double tol = 1e-10;

    std::set<int> tagged;
    for (const auto* list : {&mesh.crack_face_nodes, &mesh.ligament_nodes,
                             &mesh.left_symmetry_nodes, &mesh.top_nodes,
                             &mesh.right_nodes}) {
        tagged.insert(list->begin(), list->end());
    }
    // every boundary edge endpoint is tagged; interior nodes are not
    for (const auto& be : mesh.boundary_edges) {
        EXPECT_TRUE(tagged.count(be.n0));
        EXPECT_TRUE(tagged.count(be.n1));
    }
    for (int n : mesh.crack_face_nodes) {
        EXPECT_NEAR(mesh.nodes[n].y(), 0.0, tol);
        EXPECT_LT(mesh.nodes[n].x(), 0.0);
    }
    for (int n : mesh.ligament_nodes) {
        EXPECT_NEAR(mesh.nodes[n].y(), 0.0, tol);
        EXPECT_GE(mesh.nodes[n].x(), -tol);
    }
    for (int n : mesh.left_symmetry_nodes) EXPECT_NEAR(mesh.nodes[n].x(), -d, tol);
    for (int n : mesh.top_nodes) EXPECT_NEAR(mesh.nodes[n].y(), L, tol);
    for (int n : mesh.right_nodes) EXPECT_NEAR(mesh.nodes[n].x(), xr, tol);

    // tip node belongs to the ligament, not the crack face
    EXPECT_TRUE(std::count(mesh.ligament_nodes.begin(), mesh.ligament_nodes.end(),
                           mesh.tip_node));
    EXPECT_FALSE(std::count(mesh.crack_face_nodes.begin(),
                            mesh.crack_face_nodes.end(), mesh.tip_node));

    // corners carry both adjoining tags
    auto has = [&](const std::vector<int>& v, double x, double y) {
        for (int n : v)
            if ((mesh.nodes[n] - Eigen::Vector2d(x, y)).norm() < tol) return true;
        return false;
    };
    EXPECT_TRUE(has(mesh.crack_face_nodes, -d, 0.0));
    EXPECT_TRUE(has(mesh.left_symmetry_nodes, -d, 0.0));
    EXPECT_TRUE(has(mesh.top_nodes, -d, L));
    EXPECT_TRUE(has(mesh.left_symmetry_nodes, -d, L));
    EXPECT_TRUE(has(mesh.top_nodes, xr, L));
    EXPECT_TRUE(has(mesh.right_nodes, xr, L));
    EXPECT_TRUE(has(mesh.ligament_nodes, xr, 0.0));
    EXPECT_TRUE(has(mesh.right_nodes, xr, 0.0));

    // the load-bearing boundaries have edges
    EXPECT_FALSE(mesh.edges_with_tag(BoundaryTag::Top).empty());
    EXPECT_FALSE(mesh.edges_with_tag(BoundaryTag::Right).empty());
    EXPECT_FALSE(mesh.edges_with_tag(BoundaryTag::CrackFace).empty());
}

TEST(Mesh, InfeasibleSpecsRejected) {
    auto spec = default_spec();
    spec.fan_radius = 0.5;  // larger than 0.4 min(d, L-d, L)
    EXPECT_THROW(generate_quarter_mesh(spec), MeshError);
    spec = default_spec();
    spec.fan_count = 1;
    EXPECT_THROW(generate_quarter_mesh(spec), MeshError);
    spec = default_spec();
    spec.half_crack = 1.5;  // d > L
    EXPECT_THROW(generate_quarter_mesh(spec), MeshError);
    spec = default_spec();
    spec.grading = 1.0;
    EXPECT_THROW(generate_quarter_mesh(spec), MeshError);
}

TEST(Mesh, DeterministicGeneration) {
    const auto a = generate_quarter_mesh(default_spec());
    const auto b = generate_quarter_mesh(default_spec());
    ASSERT_EQ(a.node_count(), b.node_count());
    ASSERT_EQ(a.element_count(), b.element_count());
    for (std::size_t i = 0; i < a.node_count(); ++i) {
        EXPECT_EQ(a.nodes[i].x(), b.nodes[i].x());
        EXPECT_EQ(a.nodes[i].y(), b.nodes[i].y());
    }
    EXPECT_EQ(a.elements, b.elements);
}

TEST(Mesh, RefinementMonotonicity) {
    auto spec = default_spec();
    const auto coarse = generate_quarter_mesh(spec);
    spec.fan_radius *= 0.5;
    const auto fine = generate_quarter_mesh(spec);
    auto fan_diameter = [](const Mesh& m) {
        double dmax = 0.0;
        for (int e : m.enriched) {
            const auto& el = m.elements[e];
            for (int s = 0; s < 3; ++s) {
                dmax = std::max(dmax,
                                (m.nodes[el[s]] - m.nodes[el[(s + 1) % 3]]).norm());
            }
        }
        return dmax;
    };
    EXPECT_LE(fan_diameter(fine), 0.5 * fan_diameter(coarse) + 1e-15);
}

TEST(Mesh, ExportRoundTripSanity) {
    const auto mesh = generate_quarter_mesh(default_spec());
    std::ostringstream out;
    write_mesh(mesh, out);
    const std::string text = out.str();
    EXPECT_NE(text.find("node 0 0 0"), std::string::npos);
    std::size_t nodes = 0, elements = 0, tags = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("node ", 0) == 0) ++nodes;
        if (line.rfind("element ", 0) == 0) ++elements;
        if (line.rfind("tag ", 0) == 0) ++tags;
    }
    EXPECT_EQ(nodes, mesh.node_count());
    EXPECT_EQ(elements, mesh.element_count());
    EXPECT_EQ(tags, 5u);
}

TEST(Mesh, SmallCrackAndLargeCrackGeometries) {
    for (double d : {0.025, 0.5}) {
        auto spec = default_spec();
        spec.half_crack = d;
        spec.fan_radius = 1e-4;
        const auto mesh = generate_quarter_mesh(spec);
        EXPECT_GT(mesh.node_count(), 50u);
        for (const auto& el : mesh.elements) {
            const auto g = triangle_geometry(mesh.nodes[el[0]], mesh.nodes[el[1]],
                                             mesh.nodes[el[2]]);
            EXPECT_GT(g.delta, 0.0);
        }
    }
}
