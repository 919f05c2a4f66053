#pragma once

// Local velocity post-processing on macroelements. On each macro M with
// h the diameter of its largest element, find u_h (C0 inside M) with
//   (lambda u_h, v)_h + h^2 (div u_h, div v) + h^2 (curl(lambda u_h), curl(lambda v))
//       = -(grad p_h, v)_h + h^2 (f, div v)
// where (.,.)_h is evaluated at the k x k superconvergent Gauss points of
// each element and lambda is the element's resistivity. The exact Darcy
// velocity (lambda u = -grad p, div u = f, curl(lambda u) = 0) satisfies it.
// Interfaces interior to a macro may be imposed with the nodal transform.

#include "darcy/detail/vector_assembly.hpp"
#include "darcy/problem.hpp"

#include <Eigen/LU>

namespace darcy {

struct MacroVelocity {
    Index macro = 0;
    std::vector<Index> elements;
    /// Per-element coefficients, element-major in the order of `elements`.
    std::vector<Vector2> element_values;
    std::map<Index, TwoSidedValue> interface_values;
};

namespace detail {

inline double macro_size(const Mesh& mesh, const Macroelement& macro)
{
    double h = 0.0;
    for (Index e : macro.element_ids) h = std::max(h, mesh.geometry(e).diameter());
    return h;
}

inline ElementKernel lpp_kernel(const Mesh& mesh, const ConductivityField& k, const PiecewiseScalar& source, const ScalarField& p, double h)
{
    return [&mesh, &k, source, &p, h](Index e) {
        const auto& el = mesh.element(e);
        const Tensor2& lam = k.resistivity(el.subdomain);
        const int nloc = mesh.nodes_per_element();
        const double h2 = h * h;
        ElementBlock blk{Eigen::MatrixXd::Zero(2 * nloc, 2 * nloc), Eigen::VectorXd::Zero(2 * nloc)};

        // Discrete mass and data terms at the superconvergent points.
        const ElementValues sp = element_values(mesh, e, superconvergent_points(mesh.degree));
        for (std::size_t q = 0; q < sp.size(); ++q) {
            const auto& n = sp.values[q];
            Vector2 grad_p = Vector2::Zero();
            for (int a = 0; a < nloc; ++a) grad_p += p.values(el.node_ids[a]) * sp.gradients[q].row(a).transpose();
            for (int a = 0; a < nloc; ++a) {
                for (int i = 0; i < 2; ++i) {
                    for (int b = 0; b < nloc; ++b)
                        for (int j = 0; j < 2; ++j) blk.matrix(2 * a + i, 2 * b + j) += sp.jxw[q] * n(a) * n(b) * lam(i, j);
                    blk.rhs(2 * a + i) -= sp.jxw[q] * grad_p(i) * n(a);
                }
            }
        }

        // Divergence and irrotationality residuals, integrated exactly.
        const ElementValues ev = element_values(mesh, e, assembly_rule(mesh.degree));
        Eigen::VectorXd div(2 * nloc), curl(2 * nloc);
        for (std::size_t q = 0; q < ev.size(); ++q) {
            const auto& g = ev.gradients[q];
            for (int a = 0; a < nloc; ++a) {
                for (int i = 0; i < 2; ++i) {
                    div(2 * a + i) = g(a, i);
                    // curl(lambda N_a e_i) = lambda(1,i) dN_a/dx - lambda(0,i) dN_a/dy
                    curl(2 * a + i) = lam(1, i) * g(a, 0) - lam(0, i) * g(a, 1);
                }
            }
            const double f = source ? source(el.subdomain, ev.points[q]) : 0.0;
            blk.matrix.noalias() += ev.jxw[q] * h2 * (div * div.transpose() + curl * curl.transpose());
            blk.rhs.noalias() += ev.jxw[q] * h2 * f * div;
        }
        return blk;
    };
}

inline MacroVelocity lpp_solve(const Mesh& mesh, const Macroelement& macro, const ScalarField& p, const ConductivityField& k,
                               const PiecewiseScalar& source, const TransformMap& transforms)
{
    const NodeNumbering nn = number_nodes(mesh, macro.element_ids);
    const double h = macro_size(mesh, macro);
    LinearSystem sys = assemble_vector_problem(mesh, macro.element_ids, nn, lpp_kernel(mesh, k, source, p, h), transforms);
    const Eigen::MatrixXd a = Eigen::MatrixXd(sys.matrix());
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-12)) {
        throw SolverError("singular local post-processing system on macroelement " + std::to_string(macro.id) +
                              " (reciprocal condition " + std::to_string(rcond) + ")",
                          rcond);
    }
    Eigen::VectorXd x = lu.solve(sys.rhs());
    x += lu.solve(sys.rhs() - a * x);

    MacroVelocity out;
    out.macro = macro.id;
    out.elements = macro.element_ids;
    const int nloc = mesh.nodes_per_element();
    out.element_values.resize(macro.element_ids.size() * static_cast<std::size_t>(nloc));
    for (std::size_t i = 0; i < macro.element_ids.size(); ++i) {
        const Index e = macro.element_ids[i];
        const auto& el = mesh.element(e);
        for (int a2 = 0; a2 < nloc; ++a2) {
            const Index n = el.node_ids[a2];
            const Index l = nn.local.at(n);
            Vector2 v(x(2 * l), x(2 * l + 1));
            const auto it = transforms.find(n);
            if (it != transforms.end() && el.subdomain == it->second.side1) v = it->second.t * v;
            out.element_values[i * static_cast<std::size_t>(nloc) + static_cast<std::size_t>(a2)] = v;
        }
    }
    collect_two_sided(nn, x, transforms, out.interface_values);
    return out;
}

} // namespace detail

/// Continuous solve over the macro (any interior interface is not imposed).
inline MacroVelocity lpp_solve_macro(const Mesh& mesh, const Macroelement& macro, const ScalarField& p, const ConductivityField& k,
                                     const PiecewiseScalar& source)
{
    return detail::lpp_solve(mesh, macro, p, k, source, {});
}

/// Interior interfaces of the macro imposed through the nodal transform;
/// the result is two-sided at those interface nodes.
inline MacroVelocity lpp_solve_macro_with_interface(const Mesh& mesh, const Macroelement& macro, const ScalarField& p,
                                                    const ConductivityField& k, const PiecewiseScalar& source)
{
    const TransformMap transforms = build_interface_transforms(interface_frames(mesh, &macro.element_ids), k);
    return detail::lpp_solve(mesh, macro, p, k, source, transforms);
}

/// Independent macro solves gathered into a macro-discontinuous field. With
/// `impose_interfaces`, macros with an interior interface use the transform.
inline VelocityField lpp_solve_all(const Mesh& mesh, const std::vector<Macroelement>& macros, const ScalarField& p,
                                   const ConductivityField& k, const PiecewiseScalar& source, bool impose_interfaces = false)
{
    const int nloc = mesh.nodes_per_element();
    VelocityField u;
    u.degree = mesh.degree;
    u.storage = VelocityStorage::macro_discontinuous;
    u.element_values.resize(static_cast<std::size_t>(mesh.num_elements() * nloc));
    u.element_macro.assign(static_cast<std::size_t>(mesh.num_elements()), -1);

    std::string failures;
    for (const auto& m : macros) {
        for (Index e : m.element_ids) {
            DARCY_REQUIRE(u.element_macro[static_cast<std::size_t>(e)] < 0, InvalidArgument,
                          "element " + std::to_string(e) + " belongs to more than one macroelement");
            u.element_macro[static_cast<std::size_t>(e)] = m.id;
        }
        try {
            const MacroVelocity mv = impose_interfaces && m.has_interior_interface ? lpp_solve_macro_with_interface(mesh, m, p, k, source)
                                                                                   : lpp_solve_macro(mesh, m, p, k, source);
            for (std::size_t i = 0; i < mv.elements.size(); ++i)
                for (int a = 0; a < nloc; ++a)
                    u.element_values[static_cast<std::size_t>(mv.elements[i] * nloc + a)] = mv.element_values[i * static_cast<std::size_t>(nloc) + static_cast<std::size_t>(a)];
            u.interface_values.insert(mv.interface_values.begin(), mv.interface_values.end());
        } catch (const Error& err) {
            failures += std::string(failures.empty() ? "" : "; ") + err.what();
        }
    }
    if (!failures.empty()) throw SolverError(failures, 0.0);
    for (Index e = 0; e < mesh.num_elements(); ++e)
        DARCY_REQUIRE(u.element_macro[static_cast<std::size_t>(e)] >= 0, InvalidArgument,
                      "element " + std::to_string(e) + " is not covered by any macroelement");
    return u;
}

} // namespace darcy
