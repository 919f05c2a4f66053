#pragma once

// Built-in benchmark problems.

#include "darcy/problem.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace darcy {

/// Layered channel [0,2]x[0,1]: subdomain 1 (y > 1/2, K = 2) over subdomain 2
/// (K = 1). Potential 1 on the west side, 0 on the east side, no-flux plates.
/// Exact: p = 1 - x/2, u = (1, 0) upper, (0.5, 0) lower.
inline ProblemDefinition plates_problem()
{
    ProblemDefinition pb;
    pb.name = "plates";
    pb.rect = {0.0, 0.0, 2.0, 1.0};
    pb.classify = [](const Point& x) { return x.y() > 0.5 ? 1 : 2; };
    pb.conductivity = ConductivityField{{1, isotropic(2.0)}, {2, isotropic(1.0)}};
    pb.dirichlet = {side_bit(Side::west) | side_bit(Side::east), [](const Point& x) { return 1.0 - 0.5 * x.x(); }};
    pb.source = [](int, const Point&) { return 0.0; };
    const ConductivityField k = pb.conductivity;
    ExactSolution ex;
    ex.potential = [](int, const Point& x) { return 1.0 - 0.5 * x.x(); };
    ex.gradient = [](int, const Point&) { return Vector2(-0.5, 0.0); };
    ex.velocity = [k](int s, const Point&) { return Vector2(-k.conductivity(s) * Vector2(-0.5, 0.0)); };
    ex.source = pb.source;
    pb.exact = ex;
    return pb;
}

/// Unit square crossed by two thin, nearly impervious barriers (K = 1e-5,
/// subdomain 2) in a K = 1 medium (subdomain 1). Same boundary conditions as
/// the plates problem. The barrier layout is read off a published sketch and
/// is approximate: two cells thick on a 25 x 25 mesh, the first rising from
/// the bottom to y = 0.6, the second hanging from the top down to y = 0.4.
inline ProblemDefinition barriers_problem()
{
    ProblemDefinition pb;
    pb.name = "barriers";
    pb.rect = {0.0, 0.0, 1.0, 1.0};
    pb.classify = [](const Point& x) {
        const bool first = x.x() > 0.28 && x.x() < 0.36 && x.y() < 0.6;
        const bool second = x.x() > 0.64 && x.x() < 0.72 && x.y() > 0.4;
        return first || second ? 2 : 1;
    };
    pb.conductivity = ConductivityField{{1, isotropic(1.0)}, {2, isotropic(1.0e-5)}};
    pb.dirichlet = {side_bit(Side::west) | side_bit(Side::east), [](const Point& x) { return x.x() < 0.5 ? 1.0 : 0.0; }};
    pb.source = [](int, const Point&) { return 0.0; };
    return pb;
}

/// [0,1]x[0,2] with K = 1 on [0,.5]x[0,1] (1), K = 10 on [.5,1]x[0,1] (2) and
/// K = 5 on [0,1]x[1,2] (3). Potential 1 on top, 0 at the bottom, no-flux
/// vertical sides. The three media meet at (0.5, 1).
inline ProblemDefinition three_media_problem()
{
    ProblemDefinition pb;
    pb.name = "three_media";
    pb.rect = {0.0, 0.0, 1.0, 2.0};
    pb.classify = [](const Point& x) {
        if (x.y() > 1.0) return 3;
        return x.x() < 0.5 ? 1 : 2;
    };
    pb.conductivity = ConductivityField{{1, isotropic(1.0)}, {2, isotropic(10.0)}, {3, isotropic(5.0)}};
    pb.dirichlet = {side_bit(Side::south) | side_bit(Side::north), [](const Point& x) { return x.y() > 1.0 ? 1.0 : 0.0; }};
    pb.source = [](int, const Point&) { return 0.0; };
    return pb;
}

/// Anisotropic heterogeneous problem on [-1,1]^2 with interface x = 0:
///   x < 0 (1): K = I,               p = gamma (2 sin y + cos y) x + sin y
///   x > 0 (2): K = gamma [2 1; 1 2], p = exp(x) sin y
/// Dirichlet data everywhere. f = -div(K grad p) is p itself for x < 0 and
/// -2 gamma exp(x) cos y for x > 0.
inline ProblemDefinition crumpton_problem(double gamma = 1.0)
{
    ProblemDefinition pb;
    pb.name = "crumpton";
    pb.rect = {-1.0, -1.0, 1.0, 1.0};
    pb.classify = [](const Point& x) { return x.x() < 0.0 ? 1 : 2; };
    Tensor2 k2;
    k2 << 2.0, 1.0, 1.0, 2.0;
    pb.conductivity = ConductivityField{{1, Tensor2::Identity()}, {2, gamma * k2}};

    auto potential = [gamma](int s, const Point& x) {
        if (s == 1) return gamma * (2.0 * std::sin(x.y()) + std::cos(x.y())) * x.x() + std::sin(x.y());
        return std::exp(x.x()) * std::sin(x.y());
    };
    auto gradient = [gamma](int s, const Point& x) {
        if (s == 1) {
            return Vector2(gamma * (2.0 * std::sin(x.y()) + std::cos(x.y())),
                           gamma * (2.0 * std::cos(x.y()) - std::sin(x.y())) * x.x() + std::cos(x.y()));
        }
        return Vector2(std::exp(x.x()) * std::sin(x.y()), std::exp(x.x()) * std::cos(x.y()));
    };
    auto source = [gamma](int s, const Point& x) {
        if (s == 1) return gamma * (2.0 * std::sin(x.y()) + std::cos(x.y())) * x.x() + std::sin(x.y());
        return -2.0 * gamma * std::exp(x.x()) * std::cos(x.y());
    };
    const ConductivityField k = pb.conductivity;
    pb.dirichlet = {all_sides, [potential](const Point& x) { return potential(x.x() < 0.0 ? 1 : 2, x); }};
    pb.source = source;
    ExactSolution ex;
    ex.potential = potential;
    ex.gradient = gradient;
    ex.velocity = [k, gradient](int s, const Point& x) { return Vector2(-k.conductivity(s) * gradient(s, x)); };
    ex.source = source;
    pb.exact = ex;
    return pb;
}

/// p = sin(pi x) sin(pi y) on the unit square, K = I, homogeneous Dirichlet data.
inline ProblemDefinition smooth_problem()
{
    constexpr double pi = 3.14159265358979323846;
    ProblemDefinition pb;
    pb.name = "smooth";
    pb.rect = {0.0, 0.0, 1.0, 1.0};
    pb.classify = [](const Point&) { return 1; };
    pb.conductivity = ConductivityField{{1, Tensor2::Identity()}};
    pb.dirichlet = {all_sides, [](const Point&) { return 0.0; }};
    pb.source = [](int, const Point& x) { return 2.0 * pi * pi * std::sin(pi * x.x()) * std::sin(pi * x.y()); };
    ExactSolution ex;
    ex.potential = [](int, const Point& x) { return std::sin(pi * x.x()) * std::sin(pi * x.y()); };
    ex.gradient = [](int, const Point& x) {
        return Vector2(pi * std::cos(pi * x.x()) * std::sin(pi * x.y()), pi * std::sin(pi * x.x()) * std::cos(pi * x.y()));
    };
    ex.velocity = [g = ex.gradient](int s, const Point& x) { return Vector2(-g(s, x)); };
    ex.source = pb.source;
    pb.exact = ex;
    return pb;
}

inline const std::vector<std::string>& builtin_problem_names()
{
    static const std::vector<std::string> names{"plates", "barriers", "three_media", "crumpton", "smooth"};
    return names;
}

inline ProblemDefinition builtin_problem(const std::string& name, double gamma = 1.0)
{
    if (name == "plates") return plates_problem();
    if (name == "barriers") return barriers_problem();
    if (name == "three_media") return three_media_problem();
    if (name == "crumpton") return crumpton_problem(gamma);
    if (name == "smooth") return smooth_problem();
    throw InvalidArgument("unknown problem '" + name + "'");
}

} // namespace darcy
