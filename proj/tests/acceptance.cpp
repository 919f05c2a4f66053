// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "darcy/darcy.hpp"

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

using namespace darcy;

namespace {

struct Criterion {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string& what)
    {
        pass = pass && ok;
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? "" : " [out of band]");
    }
};

std::string fmt(const char* f, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string band(const std::string& label, double v, double lo, double hi)
{
    return label + " " + fmt("%.3f", v) + " in [" + fmt("%g", lo) + ", " + fmt("%g", hi) + "]";
}

/// Reports are reused between criteria; key is method and degree.
class Reports {
public:
    const ConvergenceReport& get(Method m, int degree)
    {
        const auto key = std::make_pair(static_cast<int>(m), degree);
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, run_convergence(pb_, m, degree, default_meshes(m, degree))).first;
        return it->second;
    }

private:
    ProblemDefinition pb_ = crumpton_problem(1.0);
    std::map<std::pair<int, int>, ConvergenceReport> cache_;
};

void rate_band(Criterion& c, Reports& reports, Method m, int degree, double ErrorRates::*which, const char* name, double lo, double hi)
{
    const double r = reports.get(m, degree).fitted_rate().*which;
    c.check(r >= lo && r <= hi, band(std::string(to_string(m)) + " Q" + std::to_string(degree) + " " + name, r, lo, hi));
}

double max_nodal_error(const Mesh& mesh, const VelocityField& u, const PiecewiseVector& exact)
{
    double m = 0.0;
    for (const auto& el : mesh.elements)
        for (int a = 0; a < mesh.nodes_per_element(); ++a)
            m = std::max(m, (u.coefficient(el.id, a) - exact(el.subdomain, mesh.node_point(el.node_ids[static_cast<std::size_t>(a)]))).norm());
    return m;
}

double max_interface_residual(const VelocityField& u, const TransformMap& transforms, const ConductivityField& k)
{
    double m = 0.0;
    for (const auto& [node, tv] : u.interface_values) {
        const InterfaceTransform& tr = transforms.at(node);
        m = std::max(m, interface_condition_residual(tr, tv.side1, tv.side2, k.resistivity(tr.side1), k.resistivity(tr.side2))
                            .cwiseAbs()
                            .maxCoeff());
    }
    return m;
}

Criterion criterion1(Reports& r)
{
    Criterion c;
    rate_band(c, r, Method::galerkin, 1, &ErrorRates::l2_p, "L2(p)", 1.85, 2.2);
    rate_band(c, r, Method::galerkin, 2, &ErrorRates::l2_p, "L2(p)", 2.8, 3.2);
    return c;
}

Criterion criterion2(Reports& r)
{
    Criterion c;
    rate_band(c, r, Method::gppid, 1, &ErrorRates::l2_u, "L2(u)", 1.8, 2.2);
    rate_band(c, r, Method::gppid, 2, &ErrorRates::l2_u, "L2(u)", 2.3, 2.7);
    return c;
}

Criterion criterion3(Reports& r)
{
    Criterion c;
    rate_band(c, r, Method::lpp, 1, &ErrorRates::l2_u, "L2(u)", 1.8, 2.2);
    rate_band(c, r, Method::lpp, 2, &ErrorRates::l2_u, "L2(u)", 2.7, 3.3);
    return c;
}

Criterion criterion4(Reports& r)
{
    Criterion c;
    rate_band(c, r, Method::lpp_id, 1, &ErrorRates::l2_u, "L2(u)", 1.8, 2.2);
    rate_band(c, r, Method::lpp_id, 2, &ErrorRates::l2_u, "L2(u)", 2.7, 3.3);
    return c;
}

Criterion criterion5(Reports& r)
{
    Criterion c;
    for (Method m : {Method::gls, Method::hvm})
        for (int deg : {1, 2}) rate_band(c, r, m, deg, &ErrorRates::l2_u, "L2(u)", 0.35, 0.7);
    return c;
}

Criterion criterion6(Reports& r)
{
    Criterion c;
    rate_band(c, r, Method::gls, 1, &ErrorRates::l2_div, "L2(div u)", 0.3, 0.8);
    rate_band(c, r, Method::gls, 2, &ErrorRates::l2_div, "L2(div u)", 0.3, 0.8);
    const double hvm = r.get(Method::hvm, 2).fitted_rate().l2_div;
    c.check(hvm <= 0.3, "hvm Q2 L2(div u) " + fmt("%.3f", hvm) + " <= 0.3");
    return c;
}

Criterion criterion7()
{
    Criterion c;
    const ProblemDefinition pb = plates_problem();
    const Mesh mesh = pb.mesh(24, 12, 1);
    const ScalarField p = solve_potential(mesh, pb);
    const auto& exact = pb.exact->velocity;

    const double e_gppid = max_nodal_error(mesh, solve_gppid(mesh, pb.conductivity, pb.source, p), exact);
    c.check(e_gppid <= 1e-8, "gppid max error " + fmt("%.2e", e_gppid) + " <= 1e-8");
    const double e_lpp = max_nodal_error(mesh, lpp_solve_all(mesh, partition_macroelements(mesh, 2, 2), p, pb.conductivity, pb.source), exact);
    c.check(e_lpp <= 1e-8, "lpp 2x2 max error " + fmt("%.2e", e_lpp) + " <= 1e-8");
    for (Index m : {2, 4}) {
        const double e = max_nodal_error(mesh, lpp_solve_all(mesh, partition_macroelements(mesh, m, m), p, pb.conductivity, pb.source, true), exact);
        c.check(e <= 1e-8, "lpp_id " + std::to_string(m) + "x" + std::to_string(m) + " max error " + fmt("%.2e", e) + " <= 1e-8");
    }

    const MixedSolution hvm = solve_mixed(mesh, pb, MixedMethod::hvm);
    int inside = 0;
    for (Index n = 0; n < mesh.num_nodes(); ++n) {
        if (std::abs(mesh.node_point(n).y() - 0.5) > 1e-12) continue;
        const double ux = hvm.velocity.nodal_values[static_cast<std::size_t>(n)].x();
        inside += ux > 0.5 && ux < 1.0 ? 1 : 0;
    }
    c.check(inside >= 1, "hvm interface nodes with u_x in (0.5, 1): " + std::to_string(inside));
    return c;
}

Criterion criterion8()
{
    Criterion c;
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    const ProblemDefinition pb = crumpton_problem(1.0);

    // GPP: symmetric positive definite.
    {
        bool ok = true;
        for (int deg : {1, 2}) {
            const Mesh mesh = pb.mesh(6, 6, deg);
            const ScalarField p = solve_potential(mesh, pb);
            LinearSystem sys = assemble_gpp(mesh, pb.conductivity, pb.source, p);
            const Eigen::MatrixXd a(sys.matrix());
            ok = ok && max_asymmetry(sys.matrix()) <= 1e-12;
            ok = ok && Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(0.5 * (a + a.transpose())).eigenvalues().minCoeff() > 0.0;
        }
        c.check(ok, "gpp SPD");
    }

    // GLS symmetric.
    {
        double asym = 0.0;
        for (int deg : {1, 2}) {
            MixedSystem s = assemble_gls(pb.mesh(6, 6, deg), pb.conductivity, pb.source, 0.5, 0.5);
            asym = std::max(asym, max_asymmetry(s.system.matrix()));
        }
        c.check(asym <= 1e-12, "gls asymmetry " + fmt("%.1e", asym));
    }

    // HVM coercivity: B(x, x) >= 1/2 min(lambda_min, K_min) (|u|^2 + |grad p|^2).
    {
        double lam_min = 1e300, k_min = 1e300;
        for (const auto& [id, k] : pb.conductivity.tensors()) {
            k_min = std::min(k_min, Eigen::SelfAdjointEigenSolver<Tensor2>(k).eigenvalues().minCoeff());
            lam_min = std::min(lam_min, Eigen::SelfAdjointEigenSolver<Tensor2>(pb.conductivity.resistivity(id)).eigenvalues().minCoeff());
        }
        const double alpha = 0.5 * std::min(lam_min, k_min);
        double worst = 1e300;
        for (int deg : {1, 2}) {
            const Mesh mesh = pb.mesh(4, 4, deg);
            MixedSystem hvm = assemble_hvm(mesh, pb.conductivity, pb.source);
            const Index nn = mesh.num_nodes();
            const QuadratureRule rule = gauss_rule(deg + 2);
            for (int t = 0; t < 20; ++t) {
                Eigen::VectorXd x(3 * nn);
                for (Index i = 0; i < x.size(); ++i) x(i) = d(rng);
                std::vector<Vector2> nodal(static_cast<std::size_t>(nn));
                for (Index n = 0; n < nn; ++n) nodal[static_cast<std::size_t>(n)] = {x(2 * n), x(2 * n + 1)};
                const VelocityField u = c0_velocity(mesh, nodal);
                ScalarField p;
                p.degree = deg;
                p.values = x.tail(nn);
                double norm2 = 0.0;
                for (const auto& el : mesh.elements) {
                    const ElementGeometry geo = mesh.geometry(el.id);
                    for (std::size_t q = 0; q < rule.size(); ++q) {
                        const double w = rule.weights[q] * geo.det_jacobian(rule.points[q]);
                        norm2 += w * (u.value(el.id, rule.points[q]).squaredNorm() + p.gradient(mesh, el.id, rule.points[q]).squaredNorm());
                    }
                }
                worst = std::min(worst, x.dot(hvm.system.matrix() * x) / (alpha * norm2));
            }
        }
        c.check(worst >= 1.0 - 1e-12, "hvm coercivity ratio " + fmt("%.3f", worst) + " >= 1");
    }

    // Interface transform unit cases.
    {
        const Tensor2 k{{3.0, 0.4}, {0.4, 1.5}};
        const InterfaceTransform same = build_interface_transform({0, Vector2(0.6, 0.8), Vector2(-0.8, 0.6), 1, 2}, k, k);
        const InterfaceTransform aniso =
            build_interface_transform({0, Vector2(1.0, 0.0), Vector2(0.0, 1.0), 1, 2}, Tensor2::Identity(), Tensor2{{2.0, 1.0}, {1.0, 2.0}});
        const double e1 = (same.t - Tensor2::Identity()).cwiseAbs().maxCoeff();
        const double e2 = (aniso.t - Tensor2{{1.0, 0.0}, {-1.0 / 3.0, 2.0 / 3.0}}).cwiseAbs().maxCoeff();
        c.check(e1 <= 1e-14 && e2 <= 1e-14, "T identity/anisotropic cases " + fmt("%.1e", std::max(e1, e2)));
    }

    // Two-sided recovery satisfies both interface conditions.
    {
        double worst = 0.0;
        for (int deg : {1, 2}) {
            const Mesh mesh = pb.mesh(8, 8, deg);
            const ScalarField p = solve_potential(mesh, pb);
            const TransformMap tr = mesh_interface_transforms(mesh, pb.conductivity);
            worst = std::max(worst, max_interface_residual(solve_gppid(mesh, pb.conductivity, pb.source, p), tr, pb.conductivity));
            const Mesh m6 = pb.mesh(6, 6, deg);
            const ScalarField p6 = solve_potential(m6, pb);
            const VelocityField lid = lpp_solve_all(m6, partition_macroelements(m6, 2, 2), p6, pb.conductivity, pb.source, true);
            worst = std::max(worst, max_interface_residual(lid, mesh_interface_transforms(m6, pb.conductivity), pb.conductivity));
        }
        c.check(worst <= 1e-9, "interface conditions residual " + fmt("%.1e", worst) + " <= 1e-9");
    }

    // Quadrature and shape-function exactness.
    {
        double worst = 0.0;
        for (int n = 1; n <= 4; ++n) {
            const QuadratureRule rule = gauss_rule(n);
            for (int i = 0; i <= 2 * n - 1; ++i)
                for (int j = 0; j <= 2 * n - 1; ++j) {
                    double q = 0.0;
                    for (std::size_t k = 0; k < rule.size(); ++k) q += rule.weights[k] * std::pow(rule.points[k].x(), i) * std::pow(rule.points[k].y(), j);
                    const double exact = (i % 2 ? 0.0 : 2.0 / (i + 1)) * (j % 2 ? 0.0 : 2.0 / (j + 1));
                    worst = std::max(worst, std::abs(q - exact));
                }
        }
        for (int deg : {1, 2}) {
            for (int t = 0; t < 20; ++t) {
                const Point xi(d(rng), d(rng));
                const ShapeValues n = shape_values(deg, xi);
                const ShapeGradients g = shape_gradients(deg, xi);
                worst = std::max(worst, std::abs(n.sum() - 1.0));
                worst = std::max(worst, g.colwise().sum().cwiseAbs().maxCoeff());
            }
            for (int a = 0; a < nodes_per_element(deg); ++a) {
                const ShapeValues n = shape_values(deg, reference_node(deg, a));
                for (int b = 0; b < n.size(); ++b) worst = std::max(worst, std::abs(n(b) - (a == b ? 1.0 : 0.0)));
            }
        }
        c.check(worst <= 1e-12, "quadrature/shape exactness " + fmt("%.1e", worst) + " <= 1e-12");
    }
    return c;
}

Criterion criterion9()
{
    Criterion c;
    const ProblemDefinition pb = smooth_problem();
    for (int deg : {1, 2}) {
        std::vector<double> h, e;
        for (Index n : default_meshes(Method::galerkin, deg)) {
            const Mesh mesh = pb.mesh(n, n, deg);
            const ScalarField p = solve_potential(mesh, pb);
            h.push_back(mesh.max_element_diameter());
            e.push_back(error_norm(mesh, p, *pb.exact, ScalarNorm::discrete_gradient));
        }
        h.erase(h.begin(), h.end() - 3);
        e.erase(e.begin(), e.end() - 3);
        const double rate = detail::least_squares_slope(h, e);
        const double lo = deg == 1 ? 1.8 : 2.8;
        c.check(rate >= lo, "Q" + std::to_string(deg) + " |grad p - grad p_h|_h rate " + fmt("%.3f", rate) + " >= " + fmt("%g", lo));
    }
    return c;
}

} // namespace

int main()
{
    Reports reports;
    const std::vector<std::pair<const char*, std::function<Criterion()>>> criteria{
        {"Galerkin potential rates", [&] { return criterion1(reports); }},
        {"GPPID velocity rates", [&] { return criterion2(reports); }},
        {"LPP velocity rates", [&] { return criterion3(reports); }},
        {"LPP-ID velocity rates", [&] { return criterion4(reports); }},
        {"GLS and HVM velocity rates", [&] { return criterion5(reports); }},
        {"GLS and HVM divergence rates", [&] { return criterion6(reports); }},
        {"Plates exactness", criterion7},
        {"Property suite", criterion8},
        {"Superconvergence", criterion9},
    };
    int failed = 0;
    int id = 1;
    for (const auto& [name, run] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Criterion c;
        try {
            c = run();
        } catch (const Error& err) {
            c.pass = false;
            c.detail = std::string("error (") + err.kind() + "): " + err.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %d %s: %s (%.1f s)\n", c.pass ? "PASS" : "FAIL", id++, name, c.detail.c_str(), secs);
        std::fflush(stdout);
        failed += c.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
