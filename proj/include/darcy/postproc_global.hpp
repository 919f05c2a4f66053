#pragma once

// Global C0 velocity post-processing of a Galerkin potential:
//   (lambda u_h, w) + (delta h)^alpha (div u_h, div w) = (delta h)^alpha (f, div w) - (grad p_h, w)
// and its variant with the interface discontinuity imposed through the
// nodal transform (unknowns are the reference values u_bar).

#include "darcy/detail/vector_assembly.hpp"
#include "darcy/problem.hpp"

#include <cmath>
#include <numeric>

namespace darcy {

struct GppParameters {
    double delta = 1.0;
    double alpha = 1.0;
};

namespace detail {

inline ElementKernel gpp_kernel(const Mesh& mesh, const ConductivityField& k, const PiecewiseScalar& source, const ScalarField& p,
                                double weight)
{
    return [&mesh, &k, source, &p, weight](Index e) {
        const QuadratureRule rule = assembly_rule(mesh.degree);
        const ElementValues ev = element_values(mesh, e, rule);
        const auto& el = mesh.element(e);
        const Tensor2& lam = k.resistivity(el.subdomain);
        const int nloc = mesh.nodes_per_element();
        ElementBlock blk{Eigen::MatrixXd::Zero(2 * nloc, 2 * nloc), Eigen::VectorXd::Zero(2 * nloc)};
        for (std::size_t q = 0; q < ev.size(); ++q) {
            const auto& n = ev.values[q];
            const auto& g = ev.gradients[q];
            const double w = ev.jxw[q];
            const double f = source ? source(el.subdomain, ev.points[q]) : 0.0;
            Vector2 grad_p = Vector2::Zero();
            for (int a = 0; a < nloc; ++a) grad_p += p.values(el.node_ids[a]) * g.row(a).transpose();
            for (int a = 0; a < nloc; ++a) {
                for (int i = 0; i < 2; ++i) {
                    for (int b = 0; b < nloc; ++b)
                        for (int j = 0; j < 2; ++j)
                            blk.matrix(2 * a + i, 2 * b + j) += w * (n(a) * n(b) * lam(i, j) + weight * g(a, i) * g(b, j));
                    blk.rhs(2 * a + i) += w * (weight * f * g(a, i) - grad_p(i) * n(a));
                }
            }
        }
        return blk;
    };
}

inline std::vector<Index> all_elements(const Mesh& mesh)
{
    std::vector<Index> out(static_cast<std::size_t>(mesh.num_elements()));
    std::iota(out.begin(), out.end(), Index{0});
    return out;
}

inline double gpp_weight(const Mesh& mesh, const GppParameters& prm)
{
    DARCY_REQUIRE(prm.delta > 0.0, InvalidArgument, "GPP delta must be positive");
    return std::pow(prm.delta * mesh.max_element_diameter(), prm.alpha);
}

} // namespace detail

/// SPD system for the C0 post-processed velocity; unknown 2 n + c is
/// component c at node n.
inline LinearSystem assemble_gpp(const Mesh& mesh, const ConductivityField& k, const PiecewiseScalar& source, const ScalarField& p,
                                 const GppParameters& prm = {})
{
    const auto elements = detail::all_elements(mesh);
    const auto nn = detail::number_nodes(mesh, elements);
    return detail::assemble_vector_problem(mesh, elements, nn, detail::gpp_kernel(mesh, k, source, p, detail::gpp_weight(mesh, prm)), {});
}

inline VelocityField solve_gpp(const Mesh& mesh, const ConductivityField& k, const PiecewiseScalar& source, const ScalarField& p,
                               const GppParameters& prm = {})
{
    const Eigen::VectorXd x = solve(assemble_gpp(mesh, k, source, p, prm));
    std::vector<Vector2> nodal(static_cast<std::size_t>(mesh.num_nodes()));
    for (Index n = 0; n < mesh.num_nodes(); ++n) nodal[static_cast<std::size_t>(n)] = {x(2 * n), x(2 * n + 1)};
    return c0_velocity(mesh, std::move(nodal));
}

/// Transforms for every interface node of the mesh. Junctions of three or
/// more media are rejected.
inline TransformMap mesh_interface_transforms(const Mesh& mesh, const ConductivityField& k)
{
    return build_interface_transforms(interface_frames(mesh), k);
}

/// Non-symmetric system in the reference unknowns u_bar.
inline LinearSystem assemble_gppid(const Mesh& mesh, const ConductivityField& k, const PiecewiseScalar& source, const ScalarField& p,
                                   const GppParameters& prm, const TransformMap& transforms)
{
    for (const auto& ie : mesh.interface_edges) {
        for (Index n : mesh.edge_nodes(ie.element_left, ie.local_edge_left)) {
            DARCY_REQUIRE(transforms.count(n) > 0, InvalidArgument, "missing interface transform at node " + std::to_string(n));
        }
    }
    const auto elements = detail::all_elements(mesh);
    const auto nn = detail::number_nodes(mesh, elements);
    return detail::assemble_vector_problem(mesh, elements, nn, detail::gpp_kernel(mesh, k, source, p, detail::gpp_weight(mesh, prm)),
                                           transforms);
}

/// Two-sided field from the solved reference values: side 2 takes u_bar,
/// side 1 takes T u_bar; nodes off the interface are single-valued.
inline VelocityField recover_two_sided(const Mesh& mesh, const Eigen::VectorXd& reference, const TransformMap& transforms)
{
    DARCY_REQUIRE(reference.size() == 2 * mesh.num_nodes(), InvalidArgument, "reference vector size mismatch");
    const auto elements = detail::all_elements(mesh);
    const auto nn = detail::number_nodes(mesh, elements);
    VelocityField u;
    u.degree = mesh.degree;
    u.storage = VelocityStorage::two_sided_interface;
    u.element_values.resize(static_cast<std::size_t>(mesh.num_elements() * mesh.nodes_per_element()));
    detail::scatter_element_values(mesh, elements, nn, reference, transforms, u);
    u.nodal_values.resize(static_cast<std::size_t>(mesh.num_nodes()));
    for (Index l = 0; l < nn.size(); ++l)
        u.nodal_values[static_cast<std::size_t>(nn.global[static_cast<std::size_t>(l)])] = {reference(2 * l), reference(2 * l + 1)};
    detail::collect_two_sided(nn, reference, transforms, u.interface_values);
    return u;
}

inline VelocityField solve_gppid(const Mesh& mesh, const ConductivityField& k, const PiecewiseScalar& source, const ScalarField& p,
                                 const GppParameters& prm = {})
{
    const TransformMap transforms = mesh_interface_transforms(mesh, k);
    const Eigen::VectorXd reference = solve(assemble_gppid(mesh, k, source, p, prm, transforms));
    return recover_two_sided(mesh, reference, transforms);
}

} // namespace darcy
