#pragma once

// Lagrangian Q1/Q2 reference elements on [-1,1]^2, Gauss rules and the
// bilinear isoparametric map.
//
// Local node numbering is lexicographic over the tensor-product grid:
//   a = iy * (k + 1) + ix,   xi_ix, eta_iy taken from {-1, 1} (k = 1) or {-1, 0, 1} (k = 2).
// Q1:  2 --- 3      Q2:  6 - 7 - 8
//      |     |           3   4   5
//      0 --- 1           0 - 1 - 2

#include "darcy/core.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace darcy {

inline constexpr int max_nodes_per_element = 9;

using ShapeValues = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, max_nodes_per_element, 1>;
/// One row per basis function, columns d/dxi and d/deta (or d/dx, d/dy after mapping).
using ShapeGradients = Eigen::Matrix<double, Eigen::Dynamic, 2, 0, max_nodes_per_element, 2>;

inline void check_degree(int k)
{
    DARCY_REQUIRE(k == 1 || k == 2, InvalidArgument, "element degree must be 1 or 2, got " + std::to_string(k));
}

constexpr int nodes_per_element(int k) { return (k + 1) * (k + 1); }

/// Reference coordinate of the i-th 1D node.
inline double reference_node_1d(int k, int i) { return k == 1 ? (i == 0 ? -1.0 : 1.0) : -1.0 + i; }

inline Point reference_node(int k, int a) { return {reference_node_1d(k, a % (k + 1)), reference_node_1d(k, a / (k + 1))}; }

namespace detail {

inline void lagrange_1d(int k, double t, double* value, double* deriv)
{
    if (k == 1) {
        value[0] = 0.5 * (1.0 - t);
        value[1] = 0.5 * (1.0 + t);
        deriv[0] = -0.5;
        deriv[1] = 0.5;
    } else {
        value[0] = 0.5 * t * (t - 1.0);
        value[1] = 1.0 - t * t;
        value[2] = 0.5 * t * (t + 1.0);
        deriv[0] = t - 0.5;
        deriv[1] = -2.0 * t;
        deriv[2] = t + 0.5;
    }
}

} // namespace detail

inline ShapeValues shape_values(int k, const Point& xi)
{
    check_degree(k);
    double vx[3], dx[3], vy[3], dy[3];
    detail::lagrange_1d(k, xi.x(), vx, dx);
    detail::lagrange_1d(k, xi.y(), vy, dy);
    const int m = k == 1 ? 2 : 3;
    ShapeValues n(m * m);
    for (int iy = 0; iy < m; ++iy)
        for (int ix = 0; ix < m; ++ix) n(iy * m + ix) = vx[ix] * vy[iy];
    return n;
}

inline ShapeGradients shape_gradients(int k, const Point& xi)
{
    check_degree(k);
    double vx[3], dx[3], vy[3], dy[3];
    detail::lagrange_1d(k, xi.x(), vx, dx);
    detail::lagrange_1d(k, xi.y(), vy, dy);
    const int m = k == 1 ? 2 : 3;
    ShapeGradients g(m * m, 2);
    for (int iy = 0; iy < m; ++iy) {
        for (int ix = 0; ix < m; ++ix) {
            const int a = iy * m + ix;
            g(a, 0) = dx[ix] * vy[iy];
            g(a, 1) = vx[ix] * dy[iy];
        }
    }
    return g;
}

struct QuadratureRule {
    std::vector<Point> points;
    std::vector<double> weights;

    std::size_t size() const { return points.size(); }
};

/// Tensor-product Gauss-Legendre rule with n points per direction.
inline QuadratureRule gauss_rule(int n)
{
    DARCY_REQUIRE(n >= 1 && n <= 4, InvalidArgument, "gauss_rule supports 1..4 points per direction, got " + std::to_string(n));
    std::vector<double> x, w;
    switch (n) {
    case 1:
        x = {0.0};
        w = {2.0};
        break;
    case 2: {
        const double a = 1.0 / std::sqrt(3.0);
        x = {-a, a};
        w = {1.0, 1.0};
        break;
    }
    case 3: {
        const double a = std::sqrt(0.6);
        x = {-a, 0.0, a};
        w = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
        break;
    }
    default: {
        const double r = 2.0 * std::sqrt(1.2);
        const double a = std::sqrt((3.0 - r) / 7.0);
        const double b = std::sqrt((3.0 + r) / 7.0);
        const double wa = (18.0 + std::sqrt(30.0)) / 36.0;
        const double wb = (18.0 - std::sqrt(30.0)) / 36.0;
        x = {-b, -a, a, b};
        w = {wb, wa, wa, wb};
        break;
    }
    }
    QuadratureRule rule;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            rule.points.emplace_back(x[i], x[j]);
            rule.weights.push_back(w[i] * w[j]);
        }
    }
    return rule;
}

/// Points where the gradient of the Galerkin solution superconverges on
/// quadrilaterals: the k x k Gauss points.
inline QuadratureRule superconvergent_points(int k)
{
    check_degree(k);
    return gauss_rule(k);
}

/// Bilinear map from the reference square to a quadrilateral given by its
/// corners in lexicographic order (SW, SE, NW, NE).
class ElementGeometry {
public:
    explicit ElementGeometry(const std::array<Point, 4>& corners) : corners_(corners) {}

    const std::array<Point, 4>& corners() const { return corners_; }

    Point map(const Point& xi) const
    {
        const ShapeValues n = shape_values(1, xi);
        Point x = Point::Zero();
        for (int a = 0; a < 4; ++a) x += n(a) * corners_[a];
        return x;
    }

    /// J(i, j) = d x_i / d xi_j.
    Tensor2 jacobian(const Point& xi) const
    {
        const ShapeGradients g = shape_gradients(1, xi);
        Tensor2 jac = Tensor2::Zero();
        for (int a = 0; a < 4; ++a) jac += corners_[a] * g.row(a);
        return jac;
    }

    double det_jacobian(const Point& xi) const { return jacobian(xi).determinant(); }

    Tensor2 inverse_jacobian(const Point& xi) const
    {
        const Tensor2 jac = jacobian(xi);
        const double det = jac.determinant();
        DARCY_REQUIRE(det > 0.0, GeometryError, "non-positive Jacobian determinant");
        return jac.inverse();
    }

    /// Maps reference gradients (rows) to physical gradients.
    ShapeGradients physical_gradients(const ShapeGradients& ref, const Point& xi) const
    {
        return ref * inverse_jacobian(xi);
    }

    double diameter() const
    {
        return std::max((corners_[3] - corners_[0]).norm(), (corners_[2] - corners_[1]).norm());
    }

    double area() const
    {
        const QuadratureRule rule = gauss_rule(2);
        double a = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q) a += rule.weights[q] * det_jacobian(rule.points[q]);
        return a;
    }

private:
    std::array<Point, 4> corners_;
};

} // namespace darcy
