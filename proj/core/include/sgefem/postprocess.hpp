#pragma once

#include "sgefem/assembly.hpp"

#include <vector>

namespace sgefem {

struct FieldSample {
    Eigen::Vector2d point;
    double u = 0.0, v = 0.0;
    Eigen::Vector3d strain;                    // e11, e22, 2 e12
    Eigen::Vector3d cauchy;                    // t11, t22, t12
    Eigen::Matrix<double, 6, 1> double_stress; // m111, m112, m221, m222, m121, m122
};

// Read-only field reconstruction over a solved case. Point location is a
// linear walk with an areal containment test; ties on shared edges go to the
// lower element id.
class FieldEvaluator {
public:
    FieldEvaluator(const Mesh& mesh, const MaterialParams& material,
                   const Solution& solution, bool enrichment_active);

    // -1 when no element contains the point
    int locate(const Eigen::Vector2d& p) const;

    // Throws MeshError when the point lies outside the mesh.
    FieldSample evaluate(const Eigen::Vector2d& p) const;
    FieldSample evaluate_in(int element, const Eigen::Vector2d& p) const;

private:
    const Mesh& mesh_;
    MaterialParams material_;
    ConstitutiveMatrices cm_;
    const Solution& solution_;
    QFamily family_;
    std::vector<char> enriched_flag_;
};

// Normal displacement of the upper crack face: (x, v(x, 0)) for x in [-d, 0).
// Samples are half linearly spaced over the face and half log-clustered
// toward the tip.
std::vector<std::pair<double, double>> crack_opening_profile(
    const FieldEvaluator& eval, const Mesh& mesh, int samples);

// Tip stress concentration from the nodal DOFs at the tip node:
// tau_22 / t for mode I, tau_12 / t for mode II. The enrichment adds nothing
// there (its first derivatives vanish at nodes), so nodal values are exact
// under the method's own representation.
double tip_kt(const Mesh& mesh, const MaterialParams& material,
              const Solution& solution, CrackMode mode, double load);

// L2 norm of the displacement jump across the fan outer boundary (the trace
// of the enrichment part, which is conforming only at nodes there), relative
// to the L2 norm of the displacement on the same edges.
double enrichment_jump_norm(const Mesh& mesh, const MaterialParams& material,
                            const Solution& solution);

struct CaseSummary {
    AmplitudeFactors k;
    double j = 0.0;            // energy release rate of the active mode [Pa m]
    double j_normalized = 0.0;
    double kt = 0.0;
    double enrichment_jump = 0.0;
    SolveReport report;
    int n_nodes = 0, n_elements = 0, n_enriched = 0;
};

CaseSummary summarize_case(const Mesh& mesh, const MaterialParams& material,
                           const Solution& solution, CrackMode mode, double load,
                           double d_min, bool enrichment_active);

} // namespace sgefem
