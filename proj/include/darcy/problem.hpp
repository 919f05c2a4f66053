#pragma once

#include "darcy/conductivity.hpp"
#include "darcy/mesh.hpp"

#include <functional>
#include <optional>
#include <string>

namespace darcy {

/// Scalar function of (subdomain, point).
using PiecewiseScalar = std::function<double(int, const Point&)>;
using PiecewiseVector = std::function<Vector2(int, const Point&)>;

/// Strong potential data on the selected rectangle sides. All other sides
/// are no-flux.
struct DirichletData {
    unsigned sides = 0;
    std::function<double(const Point&)> value;

    bool on(Side s) const { return (sides & side_bit(s)) != 0; }
};

/// Closed-form solution, one branch per subdomain.
struct ExactSolution {
    PiecewiseScalar potential;
    PiecewiseVector gradient;
    PiecewiseVector velocity;
    PiecewiseScalar source;
};

struct ProblemDefinition {
    std::string name;
    Rect rect;
    SubdomainClassifier classify;
    ConductivityField conductivity;
    DirichletData dirichlet;
    PiecewiseScalar source;
    std::optional<ExactSolution> exact;

    Mesh mesh(Index nx, Index ny, int degree) const { return build_structured_mesh(nx, ny, rect, degree, classify); }
};

} // namespace darcy
