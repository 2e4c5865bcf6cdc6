#pragma once

#include <Eigen/Dense>

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace sgefem {

// Quarter model of a 2L x 2L plate with a centered crack of length 2d.
// The crack tip sits at the origin; the quarter domain is
// [-d, L-d] x [0, L]. The crack face is y = 0, x < 0; the ligament is
// y = 0, x >= 0; the symmetry plane through the crack center is x = -d.
struct DomainSpec {
    double half_crack = 0.2;   // d [m]
    double half_domain = 1.0;  // L [m]
    double fan_radius = 0.002; // R [m], chord-apex distance of the tip fan
    int fan_count = 5;         // M, enriched elements over the half circle
    double grading = 1.3;      // geometric growth of element size away from the tip
};

enum class BoundaryTag { CrackFace, Ligament, LeftSymmetry, Top, Right };

// One boundary element edge: the owning element and its two end nodes in the
// element's counterclockwise order.
struct BoundaryEdge {
    int element = -1;
    int n0 = -1, n1 = -1;
    BoundaryTag tag{};
};

struct Mesh {
    std::vector<Eigen::Vector2d> nodes;
    std::vector<std::array<int, 3>> elements;   // counterclockwise node triples
    std::vector<int> enriched;                  // tip-fan element ids
    int tip_node = -1;
    DomainSpec spec;

    std::vector<int> crack_face_nodes, ligament_nodes, left_symmetry_nodes,
        top_nodes, right_nodes;
    std::vector<BoundaryEdge> boundary_edges;

    const std::vector<int>& tagged_nodes(BoundaryTag tag) const;
    std::vector<BoundaryEdge> edges_with_tag(BoundaryTag tag) const;

    std::size_t node_count() const { return nodes.size(); }
    std::size_t element_count() const { return elements.size(); }
};

// Deterministic structured generator: an equal-angle fan of `fan_count`
// elements with apex at the tip, circular graded rings around it, and a
// transfinite blend from the outermost ring to the square boundary.
// Throws MeshError for infeasible specs.
Mesh generate_quarter_mesh(const DomainSpec& spec);

// Plain-text export: documented header, one record per line.
void write_mesh(const Mesh& mesh, std::ostream& out);
void write_mesh_file(const Mesh& mesh, const std::string& path);

} // namespace sgefem
