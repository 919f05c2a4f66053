#pragma once

// Finite element fields on a Mesh. Fields hold coefficients only; every
// evaluation takes the mesh they were built on.

#include "darcy/fe_values.hpp"
#include "darcy/problem.hpp"

#include <map>
#include <vector>

namespace darcy {

/// C0 Lagrangian potential, one coefficient per mesh node.
struct ScalarField {
    int degree = 1;
    Eigen::VectorXd values;

    double value(const Mesh& mesh, Index e, const Point& xi) const
    {
        const ShapeValues n = shape_values(degree, xi);
        const auto& ids = mesh.element(e).node_ids;
        double v = 0.0;
        for (int a = 0; a < n.size(); ++a) v += n(a) * values(ids[a]);
        return v;
    }

    /// Physical gradient at a reference point.
    Vector2 gradient(const Mesh& mesh, Index e, const Point& xi) const
    {
        const ElementGeometry geo = mesh.geometry(e);
        const ShapeGradients g = geo.physical_gradients(shape_gradients(degree, xi), xi);
        const auto& ids = mesh.element(e).node_ids;
        Vector2 out = Vector2::Zero();
        for (int a = 0; a < g.rows(); ++a) out += values(ids[a]) * g.row(a).transpose();
        return out;
    }
};

inline ScalarField interpolate(const Mesh& mesh, const std::function<double(int, const Point&)>& f)
{
    ScalarField s;
    s.degree = mesh.degree;
    s.values.resize(mesh.num_nodes());
    for (Index n = 0; n < mesh.num_nodes(); ++n) {
        const int sub = mesh.element(mesh.node_elements(n).front()).subdomain;
        s.values(n) = f(sub, mesh.node_point(n));
    }
    return s;
}

enum class VelocityStorage { c0_nodal, two_sided_interface, macro_discontinuous };

inline const char* to_string(VelocityStorage s)
{
    switch (s) {
    case VelocityStorage::c0_nodal: return "c0-nodal";
    case VelocityStorage::two_sided_interface: return "two-sided-interface";
    case VelocityStorage::macro_discontinuous: return "macro-discontinuous";
    }
    return "?";
}

struct TwoSidedValue {
    Vector2 side1 = Vector2::Zero();
    Vector2 side2 = Vector2::Zero();
    int subdomain1 = 0, subdomain2 = 0;
};

/// Vector field with per-element nodal coefficients. `element_values` is the
/// canonical storage (element-major, local node order) so that evaluation is
/// uniform across storage modes; mode-specific views are kept alongside:
/// nodal values for c0 fields, reference values plus both interface sides
/// for two-sided fields, and the owning macroelement of each element for
/// macro-discontinuous fields.
struct VelocityField {
    int degree = 1;
    VelocityStorage storage = VelocityStorage::c0_nodal;
    std::vector<Vector2> element_values;
    std::vector<Vector2> nodal_values;
    std::map<Index, TwoSidedValue> interface_values;
    std::vector<Index> element_macro;

    int nodes_per_element() const { return darcy::nodes_per_element(degree); }

    const Vector2& coefficient(Index e, int a) const
    {
        return element_values[static_cast<std::size_t>(e * nodes_per_element() + a)];
    }

    Vector2 value(Index e, const Point& xi) const
    {
        const ShapeValues n = shape_values(degree, xi);
        Vector2 v = Vector2::Zero();
        for (int a = 0; a < n.size(); ++a) v += n(a) * coefficient(e, a);
        return v;
    }

    /// Physical Jacobian, J(i, j) = d u_i / d x_j.
    Tensor2 gradient(const Mesh& mesh, Index e, const Point& xi) const
    {
        const ElementGeometry geo = mesh.geometry(e);
        const ShapeGradients g = geo.physical_gradients(shape_gradients(degree, xi), xi);
        Tensor2 out = Tensor2::Zero();
        for (int a = 0; a < g.rows(); ++a) out += coefficient(e, a) * g.row(a);
        return out;
    }

    double divergence(const Mesh& mesh, Index e, const Point& xi) const { return gradient(mesh, e, xi).trace(); }
};

/// Builds a single-valued field from nodal values (two per node).
inline VelocityField c0_velocity(const Mesh& mesh, std::vector<Vector2> nodal)
{
    DARCY_REQUIRE(static_cast<Index>(nodal.size()) == mesh.num_nodes(), InvalidArgument, "nodal velocity size mismatch");
    VelocityField u;
    u.degree = mesh.degree;
    u.storage = VelocityStorage::c0_nodal;
    u.element_values.reserve(static_cast<std::size_t>(mesh.num_elements() * mesh.nodes_per_element()));
    for (const auto& el : mesh.elements)
        for (Index n : el.node_ids) u.element_values.push_back(nodal[static_cast<std::size_t>(n)]);
    u.nodal_values = std::move(nodal);
    return u;
}

/// Element-wise nodal interpolation, each element using its own subdomain
/// branch of `f`. Single-valued wherever `f` is continuous.
inline VelocityField interpolate_velocity(const Mesh& mesh, const PiecewiseVector& f)
{
    VelocityField u;
    u.degree = mesh.degree;
    u.storage = VelocityStorage::macro_discontinuous;
    for (const auto& el : mesh.elements) {
        for (Index n : el.node_ids) u.element_values.push_back(f(el.subdomain, mesh.node_point(n)));
        u.element_macro.push_back(el.id);
    }
    return u;
}

/// curl u = d u_y / dx - d u_x / dy of a finite element vector field.
inline double curl2d(const Mesh& mesh, const VelocityField& u, Index e, const Point& xi)
{
    const Tensor2 g = u.gradient(mesh, e, xi);
    return g(1, 0) - g(0, 1);
}

} // namespace darcy
