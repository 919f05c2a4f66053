#pragma once

// Stabilized mixed velocity-potential formulations on equal-order C0
// Lagrangian spaces.
//
// Unknown layout: velocity components interleaved per node (2 n, 2 n + 1),
// followed by the potential (2 N + n).
//
// The coupling terms are written in gradient form, (v, grad p) and
// (u, grad q). For C0 fields with q = 0 on the Dirichlet boundary and
// u.n = 0 on no-flux sides this equals -(div v, p) - (div u, q) plus the
// boundary term carrying non-homogeneous Dirichlet data.

#include "darcy/conductivity.hpp"
#include "darcy/fields.hpp"
#include "darcy/linear_system.hpp"
#include "darcy/problem.hpp"

#include <string>

namespace darcy {

enum class MixedMethod { gls, hvm };

struct MixedSystem {
    MixedMethod method = MixedMethod::gls;
    double delta1 = 0.0, delta2 = 0.0;
    LinearSystem system;
};

struct MixedSolution {
    MixedMethod method = MixedMethod::gls;
    double delta1 = 0.0, delta2 = 0.0;
    VelocityField velocity;
    ScalarField potential;
};

inline Index mixed_velocity_dof(Index node, int component) { return 2 * node + component; }
inline Index mixed_potential_dof(const Mesh& mesh, Index node) { return 2 * mesh.num_nodes() + node; }

namespace detail {

inline std::vector<Index> mixed_dofs(const Mesh& mesh, const Element& el)
{
    std::vector<Index> dofs;
    dofs.reserve(3 * el.node_ids.size());
    for (Index n : el.node_ids) {
        dofs.push_back(mixed_velocity_dof(n, 0));
        dofs.push_back(mixed_velocity_dof(n, 1));
    }
    for (Index n : el.node_ids) dofs.push_back(mixed_potential_dof(mesh, n));
    return dofs;
}

// Element blocks for
//   mass_u   (lambda u, v)              * mass_coef
//   couple   (v, grad p) * cup + (u, grad q) * cpu
//   stiff    (K grad p, grad q)          * stiff_coef
//   divdiv   (lbar div u, div v)         * divdiv_coef
// which together cover GLS (any delta1, delta2) and HVM.
struct MixedCoefficients {
    double mass_u, cup, cpu, stiff, divdiv;
    double rhs_div; // coefficient of (lbar f, div v)
    double rhs_q;   // coefficient of (f, q)
};

inline LinearSystem assemble_mixed(const Mesh& mesh, const ConductivityField& k_field, const PiecewiseScalar& source,
                                   const MixedCoefficients& c, MatrixKind kind)
{
    const Index ndof = 3 * mesh.num_nodes();
    LinearSystem sys(ndof, kind);
    const QuadratureRule rule = assembly_rule(mesh.degree);
    const int nloc = mesh.nodes_per_element();
    const int nu = 2 * nloc;
    Eigen::MatrixXd ke(3 * nloc, 3 * nloc);
    Eigen::VectorXd fe(3 * nloc);
    for (const auto& el : mesh.elements) {
        const ElementValues ev = element_values(mesh, el.id, rule);
        const Tensor2& k = k_field.conductivity(el.subdomain);
        const Tensor2& lam = k_field.resistivity(el.subdomain);
        const double lbar = k_field.scalar_resistivity(el.subdomain);
        ke.setZero();
        fe.setZero();
        for (std::size_t q = 0; q < ev.size(); ++q) {
            const auto& n = ev.values[q];
            const auto& g = ev.gradients[q];
            const double w = ev.jxw[q];
            const double f = source ? source(el.subdomain, ev.points[q]) : 0.0;
            for (int a = 0; a < nloc; ++a) {
                for (int b = 0; b < nloc; ++b) {
                    for (int i = 0; i < 2; ++i) {
                        for (int j = 0; j < 2; ++j) {
                            ke(2 * a + i, 2 * b + j) += w * (c.mass_u * n(a) * n(b) * lam(i, j) + c.divdiv * lbar * g(a, i) * g(b, j));
                        }
                        ke(2 * a + i, nu + b) += w * c.cup * n(a) * g(b, i);
                        ke(nu + b, 2 * a + i) += w * c.cpu * n(a) * g(b, i);
                    }
                    ke(nu + a, nu + b) += w * c.stiff * g.row(a).dot(k * g.row(b).transpose());
                }
                for (int i = 0; i < 2; ++i) fe(2 * a + i) += w * c.rhs_div * lbar * f * g(a, i);
                fe(nu + a) += w * c.rhs_q * f * n(a);
            }
        }
        sys.accumulate(mixed_dofs(mesh, el), ke, fe);
    }
    sys.finalize();
    return sys;
}

} // namespace detail

/// Galerkin least-squares mixed method:
///   (lambda u, v) + (v, grad p) + (u, grad q)
///   + delta1 (K(lambda u + grad p), lambda v + grad q) + delta2 (lbar div u, div v)
///   = delta2 (lbar f, div v) - (f, q),
/// with lbar = tr(lambda)/2. Since lambda K = I the delta1 term splits into
/// delta1 [(lambda u, v) + (v, grad p) + (u, grad q) + (K grad p, grad q)].
/// delta1 = -1/2, delta2 = 0 gives the symmetric GLS1 variant.
inline MixedSystem assemble_gls(const Mesh& mesh, const ConductivityField& k, const PiecewiseScalar& source, double delta1,
                                double delta2)
{
    DARCY_REQUIRE(std::isfinite(delta1) && std::isfinite(delta2), InvalidArgument, "GLS parameters must be finite");
    const detail::MixedCoefficients c{1.0 + delta1, 1.0 + delta1, 1.0 + delta1, delta1, delta2, delta2, -1.0};
    return {MixedMethod::gls, delta1, delta2, detail::assemble_mixed(mesh, k, source, c, MatrixKind::symmetric)};
}

/// Adjoint-stabilized (non-symmetric) method:
///   (lambda u, v) + (v, grad p) - (u, grad q) + 1/2 (K(lambda u + grad p), -lambda v + grad q) = (f, q).
/// Expanded: 1/2 (lambda u, v) + 1/2 (v, grad p) - 1/2 (u, grad q) + 1/2 (K grad p, grad q).
inline MixedSystem assemble_hvm(const Mesh& mesh, const ConductivityField& k, const PiecewiseScalar& source)
{
    const detail::MixedCoefficients c{0.5, 0.5, -0.5, 0.5, 0.0, 0.0, 1.0};
    return {MixedMethod::hvm, 0.0, 0.0, detail::assemble_mixed(mesh, k, source, c, MatrixKind::general)};
}

/// Applies strong potential data on Dirichlet sides and u.n = 0 at the
/// nodes of the remaining (no-flux) sides, then solves.
inline MixedSolution solve_mixed(const Mesh& mesh, const MixedSystem& mixed, const DirichletData& dirichlet)
{
    LinearSystem sys = mixed.system;
    if (dirichlet.sides != 0) {
        DARCY_REQUIRE(static_cast<bool>(dirichlet.value), InvalidArgument, "Dirichlet sides given without a value function");
        for (Index n : mesh.boundary_nodes(dirichlet.sides)) sys.constrain(mixed_potential_dof(mesh, n), dirichlet.value(mesh.node_point(n)));
    }
    for (Side s : {Side::south, Side::east, Side::north, Side::west}) {
        if (dirichlet.on(s)) continue;
        const int component = (s == Side::south || s == Side::north) ? 1 : 0;
        for (Index n : mesh.boundary_nodes(side_bit(s))) sys.constrain(mixed_velocity_dof(n, component), 0.0);
    }
    const Eigen::VectorXd x = solve(sys);

    MixedSolution sol;
    sol.method = mixed.method;
    sol.delta1 = mixed.delta1;
    sol.delta2 = mixed.delta2;
    std::vector<Vector2> nodal(static_cast<std::size_t>(mesh.num_nodes()));
    for (Index n = 0; n < mesh.num_nodes(); ++n) nodal[static_cast<std::size_t>(n)] = {x(2 * n), x(2 * n + 1)};
    sol.velocity = c0_velocity(mesh, std::move(nodal));
    sol.potential.degree = mesh.degree;
    sol.potential.values = x.tail(mesh.num_nodes());
    return sol;
}

inline MixedSolution solve_mixed(const Mesh& mesh, const ProblemDefinition& problem, MixedMethod method, double delta1 = 0.5,
                                 double delta2 = 0.5)
{
    const MixedSystem sys = method == MixedMethod::gls ? assemble_gls(mesh, problem.conductivity, problem.source, delta1, delta2)
                                                       : assemble_hvm(mesh, problem.conductivity, problem.source);
    return solve_mixed(mesh, sys, problem.dirichlet);
}

} // namespace darcy
