#include "darcy/convergence.hpp"
#include "darcy/problems.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace darcy;

namespace {

int uniform(const Point&) { return 1; }

double max_nodal_error(const Mesh& mesh, const ScalarField& p, const std::function<double(const Point&)>& f)
{
    double m = 0.0;
    for (Index n = 0; n < mesh.num_nodes(); ++n) m = std::max(m, std::abs(p.values(n) - f(mesh.node_point(n))));
    return m;
}

} // namespace

TEST(Conductivity, ResistivityIsInverse)
{
    const ConductivityField k{{1, Tensor2{{2.0, 1.0}, {1.0, 2.0}}}, {2, isotropic(1e-5)}};
    for (int s : {1, 2}) EXPECT_LE((k.resistivity(s) * k.conductivity(s) - Tensor2::Identity()).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_DOUBLE_EQ(k.scalar_resistivity(1), 2.0 / 3.0);
}

TEST(Conductivity, RejectsInvalidTensors)
{
    ConductivityField k;
    EXPECT_THROW(k.set(1, Tensor2{{1.0, 0.5}, {0.0, 1.0}}), InvalidArgument);
    EXPECT_THROW(k.set(1, Tensor2{{1.0, 2.0}, {2.0, 1.0}}), InvalidArgument);
    EXPECT_THROW(k.set(1, -Tensor2::Identity()), InvalidArgument);
    EXPECT_THROW(k.conductivity(3), InvalidArgument);
}

TEST(ExactSolutions, InterfaceConsistency)
{
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    const ProblemDefinition crumpton = crumpton_problem();
    const ProblemDefinition plates = plates_problem();
    for (int i = 0; i < 50; ++i) {
        const Point a(0.0, -1.0 + 2.0 * d(rng));
        const auto& ex = *crumpton.exact;
        EXPECT_NEAR(ex.potential(1, a), ex.potential(2, a), 1e-10);
        EXPECT_NEAR(ex.potential(1, a), std::sin(a.y()), 1e-15);
        EXPECT_NEAR(ex.potential(2, a), std::sin(a.y()), 1e-15);
        EXPECT_NEAR(ex.velocity(1, a).x(), ex.velocity(2, a).x(), 1e-10);

        const Point b(2.0 * d(rng), 0.5);
        const auto& ep = *plates.exact;
        EXPECT_NEAR(ep.potential(1, b), ep.potential(2, b), 1e-10);
        EXPECT_NEAR(ep.velocity(1, b).y(), ep.velocity(2, b).y(), 1e-10);
    }
}

TEST(GalerkinPotential, ReproducesLinearData)
{
    const ConductivityField k{{1, Tensor2::Identity()}};
    for (int deg : {1, 2}) {
        const Mesh mesh = build_structured_mesh(4, 4, {0.0, 0.0, 1.0, 1.0}, deg, uniform);
        const ScalarField p = solve_potential(mesh, k, nullptr, {all_sides, [](const Point& x) { return x.x(); }});
        EXPECT_LE(max_nodal_error(mesh, p, [](const Point& x) { return x.x(); }), 1e-12);
        const GalerkinVelocity u = galerkin_velocity(mesh, p, k);
        for (Index e = 0; e < mesh.num_elements(); ++e) {
            const Vector2 v = u.value(e, {0.3, -0.2});
            EXPECT_NEAR(v.x(), -1.0, 1e-12);
            EXPECT_NEAR(v.y(), 0.0, 1e-12);
        }
    }
}

TEST(GalerkinPotential, PlatesGradientAndVelocity)
{
    const ProblemDefinition pb = plates_problem();
    const Mesh mesh = pb.mesh(24, 12, 1);
    const ScalarField p = solve_potential(mesh, pb);
    EXPECT_LE(max_nodal_error(mesh, p, [](const Point& x) { return 1.0 - 0.5 * x.x(); }), 1e-12);
    const GalerkinVelocity u = galerkin_velocity(mesh, p, pb.conductivity);
    for (const auto& el : mesh.elements) {
        EXPECT_NEAR(p.gradient(mesh, el.id, {0.0, 0.0}).x(), -0.5, 1e-12);
        const Vector2 v = u.value(el.id, {0.0, 0.0});
        EXPECT_NEAR(v.x(), el.subdomain == 1 ? 1.0 : 0.5, 1e-12);
        EXPECT_NEAR(v.y(), 0.0, 1e-12);
    }
}

TEST(GalerkinPotential, OrthogonalityResidual)
{
    const ProblemDefinition pb = crumpton_problem();
    for (int deg : {1, 2}) {
        const Mesh mesh = pb.mesh(8, 8, deg);
        LinearSystem sys = assemble_potential(mesh, pb.conductivity, pb.source, pb.dirichlet);
        const Eigen::VectorXd x = solve(sys);
        Eigen::VectorXd r = sys.matrix() * x - sys.rhs();
        for (const auto& [dof, v] : sys.constraints()) r(dof) = 0.0;
        EXPECT_LE(r.norm(), 1e-10 * sys.rhs().norm());
    }
}

TEST(GalerkinPotential, CrumptonPotentialRates)
{
    const ProblemDefinition pb = crumpton_problem();
    const ConvergenceReport q1 = run_convergence(pb, Method::galerkin, 1, {8, 16, 32});
    EXPECT_NEAR(q1.fitted_rate().l2_p, 2.0, 0.15);
    EXPECT_NEAR(q1.fitted_rate().h1_p, 1.0, 0.15);
    const ConvergenceReport q2 = run_convergence(pb, Method::galerkin, 2, {4, 8, 16});
    EXPECT_NEAR(q2.fitted_rate().l2_p, 3.0, 0.2);
    for (std::size_t i = 1; i < q1.rows.size(); ++i) EXPECT_LT(q1.rows[i].l2_p, q1.rows[i - 1].l2_p);
}

TEST(GalerkinVelocity, RatePerSubdomain)
{
    const ProblemDefinition pb = crumpton_problem();
    std::vector<double> e1, e2, h;
    for (Index n : {8, 16, 32}) {
        const Mesh mesh = pb.mesh(n, n, 1);
        const ScalarField p = solve_potential(mesh, pb);
        const GalerkinVelocity u = galerkin_velocity(mesh, p, pb.conductivity);
        e1.push_back(error_norm(mesh, u, *pb.exact, VelocityNorm::l2, 1));
        e2.push_back(error_norm(mesh, u, *pb.exact, VelocityNorm::l2, 2));
        h.push_back(mesh.max_element_diameter());
    }
    EXPECT_NEAR(detail::least_squares_slope(h, e1), 1.0, 0.15);
    EXPECT_NEAR(detail::least_squares_slope(h, e2), 1.0, 0.15);
}

TEST(GalerkinVelocity, DivergenceMatchesFiniteDifferences)
{
    const ProblemDefinition pb = crumpton_problem();
    const Mesh mesh = pb.mesh(4, 4, 2);
    const ScalarField p = solve_potential(mesh, pb);
    const GalerkinVelocity u = galerkin_velocity(mesh, p, pb.conductivity);
    const double step = 1e-5;
    for (Index e : {Index{0}, Index{5}, Index{10}, Index{15}}) {
        const Tensor2 jinv = mesh.geometry(e).inverse_jacobian({0.1, 0.2});
        // d/dx = J^{-T} d/dxi for the affine cells used here.
        const Point xi(0.1, 0.2);
        const Vector2 dxi = (u.value(e, xi + Point(step, 0)) - u.value(e, xi - Point(step, 0))) / (2 * step);
        const Vector2 deta = (u.value(e, xi + Point(0, step)) - u.value(e, xi - Point(0, step))) / (2 * step);
        Tensor2 dref;
        dref.col(0) = dxi;
        dref.col(1) = deta;
        const Tensor2 grad = dref * jinv;
        EXPECT_NEAR(u.divergence(mesh, e, xi), grad.trace(), 1e-6);
    }
}

TEST(ErrorNorms, InterpolantInSpaceIsExact)
{
    ExactSolution ex;
    ex.potential = [](int, const Point& x) { return 1.0 + 2.0 * x.x() - x.y() + 0.5 * x.x() * x.y(); };
    ex.gradient = [](int, const Point& x) { return Vector2(2.0 + 0.5 * x.y(), -1.0 + 0.5 * x.x()); };
    for (int deg : {1, 2}) {
        const Mesh mesh = build_structured_mesh(3, 2, {0.0, 0.0, 1.5, 1.0}, deg, uniform);
        const ScalarField p = interpolate(mesh, ex.potential);
        EXPECT_LE(error_norm(mesh, p, ex, ScalarNorm::l2), 1e-12);
        EXPECT_LE(error_norm(mesh, p, ex, ScalarNorm::h1_semi), 1e-12);
        EXPECT_LE(error_norm(mesh, p, ex, ScalarNorm::discrete_gradient), 1e-12);
    }
}

TEST(ErrorNorms, SingleElementUnitError)
{
    const Mesh mesh = build_structured_mesh(1, 1, {0.0, 0.0, 1.0, 1.0}, 1, uniform);
    ScalarField p;
    p.degree = 1;
    p.values = Eigen::VectorXd::Zero(mesh.num_nodes());
    ExactSolution ex;
    ex.potential = [](int, const Point&) { return 1.0; };
    ex.gradient = [](int, const Point&) { return Vector2(0.0, 0.0); };
    EXPECT_NEAR(error_norm(mesh, p, ex, ScalarNorm::l2), 1.0, 1e-15);
    EXPECT_EQ(error_norm(mesh, p, ex, ScalarNorm::h1_semi), 0.0);
}

TEST(ErrorNorms, VelocityNormsOfInterpolant)
{
    ExactSolution ex;
    ex.velocity = [](int, const Point& x) { return Vector2(x.x() * x.y(), -x.y()); };
    ex.source = [](int, const Point& x) { return x.y() - 1.0; };
    const Mesh mesh = build_structured_mesh(2, 2, {0.0, 0.0, 1.0, 1.0}, 1, uniform);
    const VelocityField u = interpolate_velocity(mesh, ex.velocity);
    EXPECT_LE(error_norm(mesh, u, ex, VelocityNorm::l2), 1e-14);
    EXPECT_LE(error_norm(mesh, u, ex, VelocityNorm::div_l2), 1e-14);
    EXPECT_LE(error_norm(mesh, u, ex, VelocityNorm::hdiv), 1e-14);
}

TEST(Superconvergence, GradientAtGaussPoints)
{
    const ProblemDefinition pb = smooth_problem();
    for (int deg : {1, 2}) {
        std::vector<double> h, e;
        for (Index n : deg == 1 ? std::vector<Index>{8, 16, 32} : std::vector<Index>{4, 8, 16}) {
            const Mesh mesh = pb.mesh(n, n, deg);
            const ScalarField p = solve_potential(mesh, pb);
            h.push_back(mesh.max_element_diameter());
            e.push_back(error_norm(mesh, p, *pb.exact, ScalarNorm::discrete_gradient));
        }
        EXPECT_GE(detail::least_squares_slope(h, e), deg + 0.8) << "degree " << deg;
    }
}
