#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <vector>

namespace sgefem {

// Symmetric triangle quadrature rule in areal coordinates, normalized so the
// weights sum to 1 on the unit-measure reference triangle. An element integral
// is approximated as  area * sum_q w_q f(L_q).
struct QuadratureRule {
    int id = 0;       // conventionally the point count
    int degree = 0;   // exactly integrated total polynomial degree
    std::vector<Eigen::Vector3d> points;
    std::vector<double> weights;

    std::size_t size() const { return points.size(); }
};

// Returns the built-in rule with the given point count (13, 25, 30 or 37).
// Throws ConfigError for unsupported ids.
const QuadratureRule& quadrature(int id);

inline const std::vector<int>& quadrature_ids() {
    static const std::vector<int> ids = {13, 25, 30, 37};
    return ids;
}

// Parses a rule from a plain-text table: one "L1 L2 L3 weight" record per
// line, '#' comments, optional "# degree: N" header. Validation rejects
// malformed records, points outside the closed triangle, weights that do not
// sum to 1, and rules whose total negative-weight mass exceeds 0.15 (the
// published 13-point reduced rule carries a single small negative centroid
// weight, which is accepted; anything worse is not).
QuadratureRule parse_quadrature(std::istream& in, const std::string& origin);
QuadratureRule load_quadrature_file(const std::string& path);

} // namespace sgefem
