#pragma once

// Error norms against piecewise exact solutions. Integration uses the
// (k+2) x (k+2) Gauss rule on each element with the element's own
// subdomain branch of the exact solution.

#include "darcy/fields.hpp"
#include "darcy/problem.hpp"

#include <cmath>

namespace darcy {

enum class ScalarNorm { l2, h1_semi, discrete_gradient };
enum class VelocityNorm { l2, div_l2, hdiv };

inline constexpr int all_subdomains = -1;

/// ||p - p_h|| in the chosen norm. `discrete_gradient` is |grad(p - p_h)|_h
/// evaluated with the k x k superconvergent Gauss points.
inline double error_norm(const Mesh& mesh, const ScalarField& p, const ExactSolution& exact, ScalarNorm which,
                         int subdomain = all_subdomains)
{
    const QuadratureRule rule = which == ScalarNorm::discrete_gradient ? superconvergent_points(mesh.degree) : error_rule(mesh.degree);
    double sum = 0.0;
    for (const auto& el : mesh.elements) {
        if (subdomain != all_subdomains && el.subdomain != subdomain) continue;
        const ElementValues ev = element_values(mesh, el.id, rule);
        for (std::size_t q = 0; q < ev.size(); ++q) {
            const Point& x = ev.points[q];
            if (which == ScalarNorm::l2) {
                double ph = 0.0;
                for (int a = 0; a < ev.values[q].size(); ++a) ph += ev.values[q](a) * p.values(el.node_ids[a]);
                const double d = exact.potential(el.subdomain, x) - ph;
                sum += ev.jxw[q] * d * d;
            } else {
                Vector2 gh = Vector2::Zero();
                for (int a = 0; a < ev.gradients[q].rows(); ++a) gh += p.values(el.node_ids[a]) * ev.gradients[q].row(a).transpose();
                sum += ev.jxw[q] * (exact.gradient(el.subdomain, x) - gh).squaredNorm();
            }
        }
    }
    return std::sqrt(sum);
}

/// Velocity error for any field exposing value(e, xi) and divergence(mesh, e, xi).
template <class Field>
double error_norm(const Mesh& mesh, const Field& u, const ExactSolution& exact, VelocityNorm which, int subdomain = all_subdomains)
{
    const QuadratureRule rule = error_rule(mesh.degree);
    double sum_l2 = 0.0, sum_div = 0.0;
    for (const auto& el : mesh.elements) {
        if (subdomain != all_subdomains && el.subdomain != subdomain) continue;
        const ElementGeometry geo = mesh.geometry(el.id);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const Point& xi = rule.points[q];
            const double jxw = rule.weights[q] * geo.det_jacobian(xi);
            const Point x = geo.map(xi);
            if (which != VelocityNorm::div_l2) sum_l2 += jxw * (exact.velocity(el.subdomain, x) - u.value(el.id, xi)).squaredNorm();
            if (which != VelocityNorm::l2) {
                const double d = exact.source(el.subdomain, x) - u.divergence(mesh, el.id, xi);
                sum_div += jxw * d * d;
            }
        }
    }
    return std::sqrt(sum_l2 + sum_div);
}

} // namespace darcy
