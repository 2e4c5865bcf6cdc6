#include "sgefem/assembly.hpp"

#include "sgefem/errors.hpp"

#include <Eigen/SparseCholesky>

#include <array>
#include <cmath>

namespace sgefem {

namespace {

// scatter of one ShapeEval into the strain operators; columns follow the
// element DOF ordering (12 per node), enriched columns appended by the caller
template <int NCol>
void fill_b_matrices(const ShapeEval& sh, Eigen::Matrix<double, 3, NCol>& b1,
                     Eigen::Matrix<double, 6, NCol>& b2) {
    b1.setZero();
    b2.setZero();
    for (int node = 0; node < 3; ++node) {
        for (int m = 0; m < 6; ++m) {
            const int f = 6 * node + m;
            const int uj = 12 * node + m;
            const int vj = 12 * node + 6 + m;
            const double nx = sh.dn(f, 0), ny = sh.dn(f, 1);
            const double nxx = sh.ddn(f, 0), nxy = sh.ddn(f, 1), nyy = sh.ddn(f, 2);
            b1(0, uj) = nx;
            b1(2, uj) = ny;
            b1(1, vj) = ny;
            b1(2, vj) = nx;
            b2(0, uj) = nxx;
            b2(1, uj) = nxy;
            b2(4, uj) = nxy;
            b2(5, uj) = nyy;
            b2(2, vj) = nxy;
            b2(3, vj) = nyy;
            b2(4, vj) = nxx;
            b2(5, vj) = nxy;
        }
    }
}

void fill_enriched_columns(const EnrichedEval& en, double shear_modulus,
                           Eigen::Matrix<double, 3, 40>& b1,
                           Eigen::Matrix<double, 6, 40>& b2) {
    const double s = 1.0 / (4.0 * shear_modulus);
    for (int n = 0; n < 4; ++n) {
        const int j = 36 + n;
        b1(0, j) = s * en.dqstar[0][n][0];
        b1(1, j) = s * en.dqstar[1][n][1];
        b1(2, j) = s * (en.dqstar[0][n][1] + en.dqstar[1][n][0]);
        b2(0, j) = s * en.ddqstar[0][n][0];
        b2(1, j) = s * en.ddqstar[0][n][1];
        b2(2, j) = s * en.ddqstar[1][n][1];
        b2(3, j) = s * en.ddqstar[1][n][2];
        b2(4, j) = s * (en.ddqstar[0][n][1] + en.ddqstar[1][n][0]);
        b2(5, j) = s * (en.ddqstar[0][n][2] + en.ddqstar[1][n][1]);
    }
}

// 5-point Gauss-Legendre on [0, 1]
constexpr int kEdgePoints = 5;
constexpr double kEdgeXi[kEdgePoints] = {
    0.046910077030668004, 0.23076534494715845, 0.5,
    0.76923465505284155, 0.953089922969332};
constexpr double kEdgeW[kEdgePoints] = {
    0.118463442528094544, 0.239314335249683234, 0.284444444444444444,
    0.239314335249683234, 0.118463442528094544};

} // namespace

int DofMap::free_count() const {
    int n = 0;
    for (char c : constrained)
        if (!c) ++n;
    return n;
}

Eigen::Matrix<double, 36, 36> element_stiffness(const TriangleGeometry& g,
                                                const ConstitutiveMatrices& cm,
                                                const QuadratureRule& rule) {
    const BellBasis basis(g);
    Eigen::Matrix<double, 36, 36> ke = Eigen::Matrix<double, 36, 36>::Zero();
    Eigen::Matrix<double, 3, 36> b1;
    Eigen::Matrix<double, 6, 36> b2;
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const ShapeEval sh = basis.eval(rule.points[q]);
        fill_b_matrices(sh, b1, b2);
        ke += rule.weights[q] *
              (b1.transpose() * cm.c * b1 + b2.transpose() * cm.a * b2);
    }
    return g.area() * ke;
}

Eigen::Matrix<double, 40, 40> element_stiffness_enriched(
    const TriangleGeometry& g, const Eigen::Vector2d& tip,
    const ConstitutiveMatrices& cm, const QuadratureRule& rule,
    const QFamily& family, double shear_modulus) {
    const BellBasis basis(g);
    const EnrichedBasis enriched(g, tip, family);
    Eigen::Matrix<double, 40, 40> ke = Eigen::Matrix<double, 40, 40>::Zero();
    Eigen::Matrix<double, 3, 40> b1;
    Eigen::Matrix<double, 6, 40> b2;
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const ShapeEval sh = basis.eval(rule.points[q]);
        const EnrichedEval en = enriched.eval(rule.points[q], sh);
        fill_b_matrices(sh, b1, b2);
        fill_enriched_columns(en, shear_modulus, b1, b2);
        ke += rule.weights[q] *
              (b1.transpose() * cm.c * b1 + b2.transpose() * cm.a * b2);
    }
    return g.area() * ke;
}

Eigen::Matrix<double, 36, 1> consistent_edge_load(const TriangleGeometry& g,
                                                  int la, int lb,
                                                  const Eigen::Vector2d& traction) {
    const BellBasis basis(g);
    const double len = (g.nodes[lb] - g.nodes[la]).norm();
    Eigen::Matrix<double, 36, 1> f = Eigen::Matrix<double, 36, 1>::Zero();
    for (int q = 0; q < kEdgePoints; ++q) {
        Eigen::Vector3d L = Eigen::Vector3d::Zero();
        L[la] = 1.0 - kEdgeXi[q];
        L[lb] = kEdgeXi[q];
        const ShapeEval sh = basis.eval(L);
        const double w = kEdgeW[q] * len;
        for (int node = 0; node < 3; ++node) {
            for (int m = 0; m < 6; ++m) {
                const int fidx = 6 * node + m;
                f[12 * node + m] += w * sh.n[fidx] * traction.x();
                f[12 * node + 6 + m] += w * sh.n[fidx] * traction.y();
            }
        }
    }
    return f;
}

Assembler::Assembler(const Mesh& mesh, const MaterialParams& material,
                     AssemblyOptions options)
    : mesh_(mesh),
      material_(material),
      cm_(constitutive_matrices(material)),
      options_(options),
      family_(material.kolosov) {
    dofs_.n_nodes = static_cast<int>(mesh.node_count());
    dofs_.constrained.assign(dofs_.total(), 0);
    enriched_flag_.assign(mesh.element_count(), 0);
    if (options_.enrichment) {
        for (int e : mesh.enriched) enriched_flag_[e] = 1;
    }
    f_ = Eigen::VectorXd::Zero(dofs_.total());
    assemble();
}

void Assembler::assemble() {
    const QuadratureRule& conv_rule = quadrature(options_.conventional_rule);
    const QuadratureRule& enr_rule = quadrature(options_.enriched_rule);
    const Eigen::Vector2d tip = mesh_.nodes[mesh_.tip_node];

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(mesh_.element_count() * 36 * 36);

    std::array<int, 40> gdof{};
    for (std::size_t e = 0; e < mesh_.element_count(); ++e) {
        const auto& el = mesh_.elements[e];
        const TriangleGeometry g = triangle_geometry(
            mesh_.nodes[el[0]], mesh_.nodes[el[1]], mesh_.nodes[el[2]]);
        for (int node = 0; node < 3; ++node) {
            for (int m = 0; m < 12; ++m) {
                gdof[12 * node + m] = dofs_.node_dof(el[node], m);
            }
        }
        if (enriched_flag_[e]) {
            for (int n = 0; n < 4; ++n) gdof[36 + n] = dofs_.amplitude_dof(n);
            const auto ke =
                element_stiffness_enriched(g, tip, cm_, enr_rule, family_,
                                           material_.shear_modulus);
            for (int i = 0; i < 40; ++i)
                for (int j = 0; j < 40; ++j)
                    trips.emplace_back(gdof[i], gdof[j], ke(i, j));
        } else {
            const auto ke = element_stiffness(g, cm_, conv_rule);
            for (int i = 0; i < 36; ++i)
                for (int j = 0; j < 36; ++j)
                    trips.emplace_back(gdof[i], gdof[j], ke(i, j));
        }
    }
    k_.resize(dofs_.total(), dofs_.total());
    k_.setFromTriplets(trips.begin(), trips.end());
    k_.makeCompressed();

    // symmetry diagnostic on the unconstrained operator
    Eigen::SparseMatrix<double> diff = Eigen::SparseMatrix<double>(k_.transpose()) - k_;
    double dmax = 0.0, kmax = 0.0;
    for (int c = 0; c < diff.outerSize(); ++c) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(diff, c); it; ++it) {
            dmax = std::max(dmax, std::abs(it.value()));
        }
    }
    for (int c = 0; c < k_.outerSize(); ++c) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(k_, c); it; ++it) {
            kmax = std::max(kmax, std::abs(it.value()));
        }
    }
    symmetry_gap_ = (kmax > 0.0) ? dmax / kmax : 0.0;
}

void Assembler::add_boundary_traction(BoundaryTag tag,
                                      const Eigen::Vector2d& traction) {
    double length = 0.0;
    for (const auto& be : mesh_.boundary_edges) {
        if (be.tag != tag) continue;
        const auto& el = mesh_.elements[be.element];
        const TriangleGeometry g = triangle_geometry(
            mesh_.nodes[el[0]], mesh_.nodes[el[1]], mesh_.nodes[el[2]]);
        int la = -1, lb = -1;
        for (int s = 0; s < 3; ++s) {
            if (el[s] == be.n0) la = s;
            if (el[s] == be.n1) lb = s;
        }
        if (la < 0 || lb < 0) {
            throw MeshError("boundary edge does not belong to its element");
        }
        const auto fe = consistent_edge_load(g, la, lb, traction);
        for (int node = 0; node < 3; ++node) {
            for (int m = 0; m < 12; ++m) {
                f_[dofs_.node_dof(el[node], m)] += fe[12 * node + m];
            }
        }
        length += (mesh_.nodes[be.n1] - mesh_.nodes[be.n0]).norm();
    }
    applied_ += traction * length;
}

void Assembler::apply_symmetry_bcs(CrackMode mode) {
    if (mesh_.left_symmetry_nodes.empty() || mesh_.ligament_nodes.empty()) {
        throw ConfigError("apply_symmetry_bcs: mesh lacks the symmetry tags");
    }
    const auto constrain_nodes = [&](const std::vector<int>& nodes,
                                     std::initializer_list<int> comps) {
        for (int n : nodes)
            for (int c : comps) dofs_.constrain(dofs_.node_dof(n, c));
    };
    if (mode == CrackMode::I) {
        constrain_nodes(mesh_.left_symmetry_nodes, {kU, kUy, kUyy, kVx, kVxy});
        constrain_nodes(mesh_.ligament_nodes, {kV, kVx, kVxx, kUy, kUxy});
        dofs_.constrain(dofs_.amplitude_dof(2));
        dofs_.constrain(dofs_.amplitude_dof(3));
    } else {
        constrain_nodes(mesh_.left_symmetry_nodes, {kV, kVy, kVyy, kUx, kUxy});
        constrain_nodes(mesh_.ligament_nodes, {kU, kUx, kUxx, kVy, kVxy});
        dofs_.constrain(dofs_.amplitude_dof(0));
        dofs_.constrain(dofs_.amplitude_dof(1));
    }
    if (!options_.enrichment) {
        for (int n = 0; n < 4; ++n) dofs_.constrain(dofs_.amplitude_dof(n));
    }
}

Eigen::VectorXd Assembler::out_of_balance(const Eigen::VectorXd& u) const {
    const QuadratureRule& conv_rule = quadrature(options_.conventional_rule);
    const QuadratureRule& enr_rule = quadrature(options_.enriched_rule);
    const Eigen::Vector2d tip = mesh_.nodes[mesh_.tip_node];
    Eigen::VectorXd r = Eigen::VectorXd::Zero(dofs_.total());

    Eigen::Matrix<double, 3, 40> b1;
    Eigen::Matrix<double, 6, 40> b2;
    std::array<int, 40> gdof{};
    Eigen::Matrix<double, 40, 1> ue;
    for (std::size_t e = 0; e < mesh_.element_count(); ++e) {
        const auto& el = mesh_.elements[e];
        const TriangleGeometry g = triangle_geometry(
            mesh_.nodes[el[0]], mesh_.nodes[el[1]], mesh_.nodes[el[2]]);
        const BellBasis basis(g);
        const bool enr = enriched_flag_[e] != 0;
        const int ncol = enr ? 40 : 36;
        const QuadratureRule& rule = enr ? enr_rule : conv_rule;
        for (int node = 0; node < 3; ++node)
            for (int m = 0; m < 12; ++m)
                gdof[12 * node + m] = dofs_.node_dof(el[node], m);
        for (int n = 0; n < 4; ++n) gdof[36 + n] = dofs_.amplitude_dof(n);
        for (int j = 0; j < ncol; ++j) ue[j] = u[gdof[j]];

        std::optional<EnrichedBasis> eb;
        if (enr) eb.emplace(g, tip, family_);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const ShapeEval sh = basis.eval(rule.points[q]);
            b1.setZero();
            b2.setZero();
            {
                Eigen::Matrix<double, 3, 36> b1c;
                Eigen::Matrix<double, 6, 36> b2c;
                fill_b_matrices(sh, b1c, b2c);
                b1.leftCols<36>() = b1c;
                b2.leftCols<36>() = b2c;
            }
            if (enr) {
                const EnrichedEval en = eb->eval(rule.points[q], sh);
                fill_enriched_columns(en, material_.shear_modulus, b1, b2);
            }
            const Eigen::Vector3d strain = b1.leftCols(ncol) * ue.head(ncol);
            const Eigen::Matrix<double, 6, 1> kappa = b2.leftCols(ncol) * ue.head(ncol);
            const Eigen::Vector3d tau = cm_.c * strain;
            const Eigen::Matrix<double, 6, 1> mu = cm_.a * kappa;
            const double w = rule.weights[q] * g.area();
            const Eigen::Matrix<double, Eigen::Dynamic, 1> re =
                w * (b1.leftCols(ncol).transpose() * tau +
                     b2.leftCols(ncol).transpose() * mu);
            for (int j = 0; j < ncol; ++j) r[gdof[j]] += re[j];
        }
    }
    return r - f_;
}

Solution Assembler::solve() const {
    const int n = dofs_.total();
    std::vector<int> free_of_global(n, -1);
    std::vector<int> global_of_free;
    global_of_free.reserve(n);
    for (int i = 0; i < n; ++i) {
        if (!dofs_.is_constrained(i)) {
            free_of_global[i] = static_cast<int>(global_of_free.size());
            global_of_free.push_back(i);
        }
    }
    const int nf = static_cast<int>(global_of_free.size());
    if (nf == 0) throw SolverError("solve: no free DOFs");

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(k_.nonZeros());
    for (int c = 0; c < k_.outerSize(); ++c) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(k_, c); it; ++it) {
            const int fi = free_of_global[it.row()];
            const int fj = free_of_global[it.col()];
            if (fi >= 0 && fj >= 0) trips.emplace_back(fi, fj, it.value());
        }
    }
    Eigen::SparseMatrix<double> kff(nf, nf);
    kff.setFromTriplets(trips.begin(), trips.end());
    kff.makeCompressed();

    Eigen::VectorXd ff(nf);
    for (int i = 0; i < nf; ++i) ff[i] = f_[global_of_free[i]];

    // symmetric diagonal equilibration: tames the mixed value/derivative DOF
    // units and the amplitude columns in one step
    Eigen::VectorXd scale(nf);
    for (int i = 0; i < nf; ++i) {
        const double dii = kff.coeff(i, i);
        scale[i] = (std::abs(dii) > 0.0) ? 1.0 / std::sqrt(std::abs(dii)) : 1.0;
    }
    Eigen::SparseMatrix<double> ks = kff;
    for (int c = 0; c < ks.outerSize(); ++c) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(ks, c); it; ++it) {
            it.valueRef() *= scale[it.row()] * scale[it.col()];
        }
    }
    Eigen::VectorXd fs = scale.asDiagonal() * ff;

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    ldlt.compute(ks);
    if (ldlt.info() != Eigen::Success) {
        throw SolverError("solve: singular factorization; the constrained system "
                          "retains rigid modes or is otherwise deficient");
    }
    Eigen::VectorXd ys = ldlt.solve(fs);
    // a couple of refinement sweeps in the scaled variables
    for (int sweep = 0; sweep < 3; ++sweep) {
        const Eigen::VectorXd res = fs - ks * ys;
        if (res.norm() <= 1e-14 * fs.norm()) break;
        ys += ldlt.solve(res);
    }
    Eigen::VectorXd uf = scale.asDiagonal() * ys;

    Solution sol;
    sol.u = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < nf; ++i) sol.u[global_of_free[i]] = uf[i];
    for (int a = 0; a < 4; ++a) sol.k.k[a] = sol.u[dofs_.amplitude_dof(a)];

    sol.report.n_dofs = n;
    sol.report.n_free = nf;
    sol.report.symmetry_gap = symmetry_gap_;
    const double fnorm = ff.norm();
    sol.report.residual_norm =
        (fnorm > 0.0) ? (kff * uf - ff).norm() / fnorm : (kff * uf).norm();

    // independent out-of-balance force from the stress recomputation
    const Eigen::VectorXd r = out_of_balance(sol.u);
    double rfree = 0.0;
    for (int i = 0; i < nf; ++i) rfree += r[global_of_free[i]] * r[global_of_free[i]];
    sol.report.out_of_balance_norm =
        (fnorm > 0.0) ? std::sqrt(rfree) / fnorm : std::sqrt(rfree);

    // global equilibrium: reactions on constrained value DOFs balance the
    // applied resultant, direction by direction
    Eigen::Vector2d reaction = Eigen::Vector2d::Zero();
    const Eigen::VectorXd kr = k_ * sol.u - f_;
    for (int node = 0; node < dofs_.n_nodes; ++node) {
        const int du = dofs_.node_dof(node, kU);
        const int dv = dofs_.node_dof(node, kV);
        if (dofs_.is_constrained(du)) reaction.x() += kr[du];
        if (dofs_.is_constrained(dv)) reaction.y() += kr[dv];
    }
    const double applied_mag = applied_.norm();
    if (applied_mag > 0.0) {
        sol.report.equilibrium_gap = (reaction + applied_).norm() / applied_mag;
    } else {
        sol.report.equilibrium_gap = reaction.norm();
    }
    return sol;
}

Solution Assembler::solve_mode(CrackMode mode, double load) {
    apply_symmetry_bcs(mode);
    if (mode == CrackMode::I) {
        add_boundary_traction(BoundaryTag::Top, {0.0, load});
    } else {
        add_boundary_traction(BoundaryTag::Top, {load, 0.0});
        add_boundary_traction(BoundaryTag::Right, {0.0, load});
    }
    return solve();
}

} // namespace sgefem
