#pragma once

#include "darcy/mesh.hpp"

namespace darcy {

/// Shape data of one element at the points of a quadrature rule, in physical
/// coordinates. `jxw[q]` is the weight times the Jacobian determinant.
struct ElementValues {
    Index element = 0;
    int subdomain = 0;
    std::vector<Point> points;
    std::vector<double> jxw;
    std::vector<ShapeValues> values;
    std::vector<ShapeGradients> gradients;

    std::size_t size() const { return points.size(); }
};

inline ElementValues element_values(const Mesh& mesh, Index e, const QuadratureRule& rule)
{
    const ElementGeometry geo = mesh.geometry(e);
    ElementValues ev;
    ev.element = e;
    ev.subdomain = mesh.element(e).subdomain;
    ev.points.reserve(rule.size());
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const Point& xi = rule.points[q];
        const double det = geo.det_jacobian(xi);
        DARCY_REQUIRE(det > 0.0, GeometryError, "non-positive Jacobian in element " + std::to_string(e));
        ev.points.push_back(geo.map(xi));
        ev.jxw.push_back(rule.weights[q] * det);
        ev.values.push_back(shape_values(mesh.degree, xi));
        ev.gradients.push_back(geo.physical_gradients(shape_gradients(mesh.degree, xi), xi));
    }
    return ev;
}

/// Full (k+1) x (k+1) Gauss rule used for bilinear-form assembly.
inline QuadratureRule assembly_rule(int degree) { return gauss_rule(degree + 1); }

/// (k+2) x (k+2) Gauss rule used for error integration.
inline QuadratureRule error_rule(int degree) { return gauss_rule(degree + 2); }

} // namespace darcy
