#pragma once

// Galerkin approximation of -div(K grad p) = f and the direct velocity -K grad p_h.

#include "darcy/conductivity.hpp"
#include "darcy/fields.hpp"
#include "darcy/linear_system.hpp"
#include "darcy/problem.hpp"

namespace darcy {

/// Stiffness system (K grad p, grad q) = (f, q) with Dirichlet values
/// registered as constraints (not yet eliminated).
inline LinearSystem assemble_potential(const Mesh& mesh, const ConductivityField& k_field, const PiecewiseScalar& source,
                                       const DirichletData& dirichlet)
{
    LinearSystem sys(mesh.num_nodes(), MatrixKind::symmetric);
    const QuadratureRule rule = assembly_rule(mesh.degree);
    const int nloc = mesh.nodes_per_element();
    Eigen::MatrixXd ke(nloc, nloc);
    Eigen::VectorXd fe(nloc);
    for (const auto& el : mesh.elements) {
        const ElementValues ev = element_values(mesh, el.id, rule);
        const Tensor2& k = k_field.conductivity(el.subdomain);
        ke.setZero();
        fe.setZero();
        for (std::size_t q = 0; q < ev.size(); ++q) {
            const auto& g = ev.gradients[q];
            ke.noalias() += ev.jxw[q] * (g * k * g.transpose());
            if (source) fe.noalias() += ev.jxw[q] * source(el.subdomain, ev.points[q]) * ev.values[q];
        }
        sys.accumulate(el.node_ids, ke, fe);
    }
    if (dirichlet.sides != 0) {
        DARCY_REQUIRE(static_cast<bool>(dirichlet.value), InvalidArgument, "Dirichlet sides given without a value function");
        for (Index n : mesh.boundary_nodes(dirichlet.sides)) sys.constrain(n, dirichlet.value(mesh.node_point(n)));
    }
    sys.finalize();
    return sys;
}

/// Solves for the potential; sides not listed in `dirichlet` are no-flux.
inline ScalarField solve_potential(const Mesh& mesh, const ConductivityField& k_field, const PiecewiseScalar& source,
                                   const DirichletData& dirichlet)
{
    const LinearSystem sys = assemble_potential(mesh, k_field, source, dirichlet);
    ScalarField p;
    p.degree = mesh.degree;
    p.values = solve(sys);
    return p;
}

inline ScalarField solve_potential(const Mesh& mesh, const ProblemDefinition& problem)
{
    return solve_potential(mesh, problem.conductivity, problem.source, problem.dirichlet);
}

namespace detail {

/// Second reference derivatives (xx, xy, yy) of the Lagrange basis.
inline Eigen::Matrix<double, Eigen::Dynamic, 3, 0, max_nodes_per_element, 3> reference_hessians(int k, const Point& xi)
{
    double vx[3], dx[3], vy[3], dy[3];
    lagrange_1d(k, xi.x(), vx, dx);
    lagrange_1d(k, xi.y(), vy, dy);
    const double second_q2[3] = {1.0, -2.0, 1.0};
    Eigen::Matrix<double, Eigen::Dynamic, 3, 0, max_nodes_per_element, 3> h(nodes_per_element(k), 3);
    for (int iy = 0; iy <= k; ++iy) {
        for (int ix = 0; ix <= k; ++ix) {
            const int a = iy * (k + 1) + ix;
            const double ddx = k == 2 ? second_q2[ix] : 0.0;
            const double ddy = k == 2 ? second_q2[iy] : 0.0;
            h(a, 0) = ddx * vy[iy];
            h(a, 1) = dx[ix] * dy[iy];
            h(a, 2) = vx[ix] * ddy;
        }
    }
    return h;
}

} // namespace detail

/// Pointwise u_G = -K grad p_h, discontinuous across elements. Holds
/// references; the mesh, potential and conductivity must outlive it.
class GalerkinVelocity {
public:
    GalerkinVelocity(const Mesh& mesh, const ScalarField& p, const ConductivityField& k) : mesh_(mesh), p_(p), k_(k) {}

    Vector2 value(Index e, const Point& xi) const
    {
        return -k_.conductivity(mesh_.element(e).subdomain) * p_.gradient(mesh_, e, xi);
    }

    /// -div(K grad p_h) inside element e. Exact for parallelogram cells.
    double divergence(const Mesh& mesh, Index e, const Point& xi) const
    {
        const ElementGeometry geo = mesh.geometry(e);
        const Tensor2 jinv = geo.inverse_jacobian(xi);
        const auto h = detail::reference_hessians(p_.degree, xi);
        const auto& ids = mesh.element(e).node_ids;
        Tensor2 href = Tensor2::Zero();
        for (int a = 0; a < h.rows(); ++a) {
            const double c = p_.values(ids[a]);
            href(0, 0) += c * h(a, 0);
            href(0, 1) += c * h(a, 1);
            href(1, 1) += c * h(a, 2);
        }
        href(1, 0) = href(0, 1);
        const Tensor2 hess = jinv.transpose() * href * jinv;
        const Tensor2& k = k_.conductivity(mesh.element(e).subdomain);
        return -(k.cwiseProduct(hess)).sum();
    }

private:
    const Mesh& mesh_;
    const ScalarField& p_;
    const ConductivityField& k_;
};

inline GalerkinVelocity galerkin_velocity(const Mesh& mesh, const ScalarField& p, const ConductivityField& k)
{
    return GalerkinVelocity(mesh, p, k);
}

} // namespace darcy
