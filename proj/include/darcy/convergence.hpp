#pragma once

// Method dispatch and mesh-refinement studies against an exact solution.

#include "darcy/mixed.hpp"
#include "darcy/norms.hpp"
#include "darcy/postproc_global.hpp"
#include "darcy/postproc_local.hpp"
#include "darcy/potential.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace darcy {

enum class Method { galerkin, gls, gls1, hvm, gpp, gppid, lpp, lpp_id };

inline constexpr std::array<Method, 8> all_methods{Method::galerkin, Method::gls, Method::gls1, Method::hvm,
                                                   Method::gpp,      Method::gppid, Method::lpp, Method::lpp_id};

inline const char* to_string(Method m)
{
    switch (m) {
    case Method::galerkin: return "galerkin";
    case Method::gls: return "gls";
    case Method::gls1: return "gls1";
    case Method::hvm: return "hvm";
    case Method::gpp: return "gpp";
    case Method::gppid: return "gppid";
    case Method::lpp: return "lpp";
    case Method::lpp_id: return "lpp_id";
    }
    return "?";
}

inline Method parse_method(const std::string& name)
{
    for (Method m : all_methods)
        if (name == to_string(m)) return m;
    throw InvalidArgument("unknown method '" + name + "'");
}

struct MethodOptions {
    double delta1 = 0.5;
    double delta2 = 0.5;
    Index macro_x = 2;
    Index macro_y = 2;
    GppParameters gpp;
};

struct MethodResult {
    Method method = Method::galerkin;
    ScalarField potential;
    /// Absent for the plain Galerkin method, whose velocity is -K grad p_h.
    std::optional<VelocityField> velocity;
};

inline MethodResult run_method(const Mesh& mesh, const ProblemDefinition& pb, Method method, const MethodOptions& opt = {})
{
    MethodResult r;
    r.method = method;
    switch (method) {
    case Method::gls:
    case Method::gls1:
    case Method::hvm: {
        const MixedSolution s = method == Method::hvm   ? solve_mixed(mesh, pb, MixedMethod::hvm)
                                : method == Method::gls1 ? solve_mixed(mesh, pb, MixedMethod::gls, -0.5, 0.0)
                                                         : solve_mixed(mesh, pb, MixedMethod::gls, opt.delta1, opt.delta2);
        r.potential = s.potential;
        r.velocity = s.velocity;
        return r;
    }
    default: break;
    }
    r.potential = solve_potential(mesh, pb);
    switch (method) {
    case Method::gpp: r.velocity = solve_gpp(mesh, pb.conductivity, pb.source, r.potential, opt.gpp); break;
    case Method::gppid: r.velocity = solve_gppid(mesh, pb.conductivity, pb.source, r.potential, opt.gpp); break;
    case Method::lpp:
    case Method::lpp_id:
        r.velocity = lpp_solve_all(mesh, partition_macroelements(mesh, opt.macro_x, opt.macro_y), r.potential, pb.conductivity, pb.source,
                                   method == Method::lpp_id);
        break;
    default: break;
    }
    return r;
}

/// Element-wise nodal samples of -K grad p_h, for output of the Galerkin velocity.
inline VelocityField sample_galerkin_velocity(const Mesh& mesh, const ScalarField& p, const ConductivityField& k)
{
    const GalerkinVelocity g = galerkin_velocity(mesh, p, k);
    const int nloc = mesh.nodes_per_element();
    VelocityField u;
    u.degree = mesh.degree;
    u.storage = VelocityStorage::macro_discontinuous;
    u.element_values.resize(static_cast<std::size_t>(mesh.num_elements() * nloc));
    u.element_macro.resize(static_cast<std::size_t>(mesh.num_elements()));
    for (Index e = 0; e < mesh.num_elements(); ++e) {
        u.element_macro[static_cast<std::size_t>(e)] = e;
        for (int a = 0; a < nloc; ++a) u.element_values[static_cast<std::size_t>(e * nloc + a)] = g.value(e, reference_node(mesh.degree, a));
    }
    return u;
}

struct ConvergenceRow {
    Index nx = 0, ny = 0;
    double h = 0.0;
    double l2_p = 0.0, h1_p = 0.0, l2_u = 0.0, l2_div = 0.0;
};

struct ErrorRates {
    double l2_p = 0.0, h1_p = 0.0, l2_u = 0.0, l2_div = 0.0;
};

struct ConvergenceReport {
    std::string problem;
    Method method = Method::galerkin;
    int degree = 1;
    std::vector<ConvergenceRow> rows;

    /// Rate between row i and row i + 1.
    ErrorRates pairwise_rate(std::size_t i) const;
    /// Least-squares slope of log(e) against log(h) over the finest three meshes.
    ErrorRates fitted_rate() const;
};

namespace detail {

inline double pair_rate(double e0, double e1, double h0, double h1) { return std::log(e0 / e1) / std::log(h0 / h1); }

inline double least_squares_slope(const std::vector<double>& h, const std::vector<double>& e)
{
    const std::size_t n = h.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(h[i]), y = std::log(e[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

} // namespace detail

inline ErrorRates ConvergenceReport::pairwise_rate(std::size_t i) const
{
    DARCY_REQUIRE(i + 1 < rows.size(), InvalidArgument, "pairwise rate index out of range");
    const auto& a = rows[i];
    const auto& b = rows[i + 1];
    return {detail::pair_rate(a.l2_p, b.l2_p, a.h, b.h), detail::pair_rate(a.h1_p, b.h1_p, a.h, b.h),
            detail::pair_rate(a.l2_u, b.l2_u, a.h, b.h), detail::pair_rate(a.l2_div, b.l2_div, a.h, b.h)};
}

inline ErrorRates ConvergenceReport::fitted_rate() const
{
    DARCY_REQUIRE(rows.size() >= 2, InvalidArgument, "a rate needs at least two meshes");
    const std::size_t first = rows.size() >= 3 ? rows.size() - 3 : 0;
    std::vector<double> h, p, g, u, d;
    for (std::size_t i = first; i < rows.size(); ++i) {
        h.push_back(rows[i].h);
        p.push_back(rows[i].l2_p);
        g.push_back(rows[i].h1_p);
        u.push_back(rows[i].l2_u);
        d.push_back(rows[i].l2_div);
    }
    return {detail::least_squares_slope(h, p), detail::least_squares_slope(h, g), detail::least_squares_slope(h, u),
            detail::least_squares_slope(h, d)};
}

inline ConvergenceRow measure_errors(const Mesh& mesh, const ProblemDefinition& pb, const MethodResult& r)
{
    DARCY_REQUIRE(pb.exact.has_value(), InvalidArgument, "problem '" + pb.name + "' has no exact solution");
    const ExactSolution& ex = *pb.exact;
    ConvergenceRow row;
    row.nx = mesh.nx;
    row.ny = mesh.ny;
    row.h = mesh.max_element_diameter();
    row.l2_p = error_norm(mesh, r.potential, ex, ScalarNorm::l2);
    row.h1_p = error_norm(mesh, r.potential, ex, ScalarNorm::h1_semi);
    if (r.velocity) {
        row.l2_u = error_norm(mesh, *r.velocity, ex, VelocityNorm::l2);
        row.l2_div = error_norm(mesh, *r.velocity, ex, VelocityNorm::div_l2);
    } else {
        const GalerkinVelocity g = galerkin_velocity(mesh, r.potential, pb.conductivity);
        row.l2_u = error_norm(mesh, g, ex, VelocityNorm::l2);
        row.l2_div = error_norm(mesh, g, ex, VelocityNorm::div_l2);
    }
    return row;
}

/// Mesh sizes used when none are given.
inline std::vector<Index> default_meshes(Method method, int degree)
{
    if (method == Method::lpp_id) return degree == 1 ? std::vector<Index>{6, 12, 24, 48} : std::vector<Index>{6, 12, 24};
    return degree == 1 ? std::vector<Index>{8, 16, 32, 64} : std::vector<Index>{4, 8, 16, 32};
}

/// Runs `method` on n x n meshes of the problem rectangle for every n in `meshes`.
inline ConvergenceReport run_convergence(const ProblemDefinition& pb, Method method, int degree, const std::vector<Index>& meshes,
                                         const MethodOptions& opt = {})
{
    check_degree(degree);
    DARCY_REQUIRE(pb.exact.has_value(), InvalidArgument, "problem '" + pb.name + "' has no exact solution");
    ConvergenceReport rep;
    rep.problem = pb.name;
    rep.method = method;
    rep.degree = degree;
    for (Index n : meshes) {
        try {
            const Mesh mesh = pb.mesh(n, n, degree);
            rep.rows.push_back(measure_errors(mesh, pb, run_method(mesh, pb, method, opt)));
        } catch (const SolverError& err) {
            throw SolverError("mesh " + std::to_string(n) + "x" + std::to_string(n) + ": " + err.what(), err.residual());
        } catch (const GeometryError& err) {
            throw GeometryError("mesh " + std::to_string(n) + "x" + std::to_string(n) + ": " + err.what());
        } catch (const InvalidArgument& err) {
            throw InvalidArgument("mesh " + std::to_string(n) + "x" + std::to_string(n) + ": " + err.what());
        }
        if (rep.rows.size() > 1)
            DARCY_REQUIRE(rep.rows.back().h < rep.rows[rep.rows.size() - 2].h, InvalidArgument, "mesh sizes must strictly decrease");
    }
    return rep;
}

} // namespace darcy
