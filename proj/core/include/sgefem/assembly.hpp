#pragma once

#include "sgefem/asymptotics.hpp"
#include "sgefem/enrichment.hpp"
#include "sgefem/material.hpp"
#include "sgefem/mesh.hpp"
#include "sgefem/quadrature.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <optional>
#include <vector>

namespace sgefem {

// Per-node DOF component indices. A node carries 12 DOFs ordered
// u, u_x, u_y, u_xx, u_xy, u_yy, v, v_x, v_y, v_xx, v_xy, v_yy;
// the four global amplitudes K1..K4 sit at the tail of the vector.
enum NodeDof : int {
    kU = 0, kUx, kUy, kUxx, kUxy, kUyy,
    kV, kVx, kVy, kVxx, kVxy, kVyy
};

struct DofMap {
    int n_nodes = 0;
    std::vector<char> constrained;  // all prescribed values are zero

    int total() const { return 12 * n_nodes + 4; }
    int node_dof(int node, int comp) const { return 12 * node + comp; }
    int amplitude_dof(int n) const { return 12 * n_nodes + n; }

    void constrain(int dof) { constrained[dof] = 1; }
    bool is_constrained(int dof) const { return constrained[dof] != 0; }
    int free_count() const;
};

struct AssemblyOptions {
    int conventional_rule = 13;
    int enriched_rule = 13;
    bool enrichment = true;
};

// Element matrices. Conventional elements contribute 36 x 36 blocks; enriched
// elements carry four extra columns tied to the global amplitude DOFs.
Eigen::Matrix<double, 36, 36> element_stiffness(const TriangleGeometry& g,
                                                const ConstitutiveMatrices& cm,
                                                const QuadratureRule& rule);

Eigen::Matrix<double, 40, 40> element_stiffness_enriched(
    const TriangleGeometry& g, const Eigen::Vector2d& tip,
    const ConstitutiveMatrices& cm, const QuadratureRule& rule,
    const QFamily& family, double shear_modulus);

// Work-consistent load of a constant traction on one element edge
// (local end nodes la, lb), integrated with 5-point Gauss-Legendre.
Eigen::Matrix<double, 36, 1> consistent_edge_load(const TriangleGeometry& g,
                                                  int la, int lb,
                                                  const Eigen::Vector2d& traction);

struct SolveReport {
    double residual_norm = 0.0;       // ||K u - f|| / ||f|| on free DOFs
    double out_of_balance_norm = 0.0; // independently recomputed residual
    double equilibrium_gap = 0.0;     // reaction sum vs applied load
    double symmetry_gap = 0.0;        // max |K - K^T| / max |K|
    int n_dofs = 0;
    int n_free = 0;
};

struct Solution {
    Eigen::VectorXd u;  // full DOF vector; constrained entries are zero
    AmplitudeFactors k;
    SolveReport report;
};

class Assembler {
public:
    Assembler(const Mesh& mesh, const MaterialParams& material,
              AssemblyOptions options);

    const DofMap& dofs() const { return dofs_; }
    const Eigen::SparseMatrix<double>& stiffness() const { return k_; }
    const Eigen::VectorXd& load() const { return f_; }

    // Marks the extended symmetry/antisymmetry constraints of the quarter
    // model plus the inactive-mode (or all, without enrichment) amplitudes.
    void apply_symmetry_bcs(CrackMode mode);

    // Adds the consistent load of a constant traction on a tagged boundary.
    void add_boundary_traction(BoundaryTag tag, const Eigen::Vector2d& traction);

    // Factorizes the constrained system and returns the solution with health
    // diagnostics. `applied_loads` lists (direction, magnitude) pairs used for
    // the global equilibrium check.
    Solution solve() const;

    // Standard load pattern of the two crack problems: mode I pulls the top
    // edge, mode II shears the top and right edges.
    Solution solve_mode(CrackMode mode, double load);

private:
    void assemble();
    Eigen::VectorXd out_of_balance(const Eigen::VectorXd& u) const;

    const Mesh& mesh_;
    MaterialParams material_;
    ConstitutiveMatrices cm_;
    AssemblyOptions options_;
    QFamily family_;
    DofMap dofs_;
    Eigen::SparseMatrix<double> k_;
    Eigen::VectorXd f_;
    double symmetry_gap_ = 0.0;
    std::vector<char> enriched_flag_;
    // applied resultant per direction for the equilibrium check
    Eigen::Vector2d applied_ = Eigen::Vector2d::Zero();
};

} // namespace sgefem
