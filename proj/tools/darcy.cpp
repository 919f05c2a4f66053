#include "darcy/darcy.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

using namespace darcy;

namespace {

struct Options {
    std::string problem;
    std::string method;
    int degree = 1;
    std::string mesh;
    std::string meshes = "8,16,32,64";
    std::string macros = "2x2";
    double delta1 = 0.5;
    double delta2 = 0.5;
    double gamma = 1.0;
    std::string out = ".";
};

std::pair<Index, Index> parse_pair(const std::string& text, const char* what)
{
    long long a = 0, b = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lldx%lld%c", &a, &b, &tail) != 2 || a < 1 || b < 1)
        throw InvalidArgument(std::string("invalid ") + what + " '" + text + "', expected NXxNY");
    return {a, b};
}

std::vector<Index> parse_list(const std::string& text)
{
    std::vector<Index> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || v < 1) throw InvalidArgument("invalid mesh list entry '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw InvalidArgument("empty mesh list");
    return out;
}

MethodOptions method_options(const Options& o)
{
    MethodOptions m;
    m.delta1 = o.delta1;
    m.delta2 = o.delta2;
    std::tie(m.macro_x, m.macro_y) = parse_pair(o.macros, "macroelement size");
    return m;
}

std::string stem(const Options& o, const std::string& suffix)
{
    std::filesystem::create_directories(o.out);
    return (std::filesystem::path(o.out) / (o.problem + "_" + o.method + "_q" + std::to_string(o.degree) + suffix)).string();
}

void print_rates(const char* label, const ErrorRates& r)
{
    std::printf("%-10s %10.4f %10.4f %10.4f %10.4f\n", label, r.l2_p, r.h1_p, r.l2_u, r.l2_div);
}

void run(const Options& o)
{
    const ProblemDefinition pb = builtin_problem(o.problem, o.gamma);
    const Method method = parse_method(o.method);
    check_degree(o.degree);
    const auto [nx, ny] = parse_pair(o.mesh, "mesh");
    const Mesh mesh = pb.mesh(nx, ny, o.degree);
    const MethodResult r = run_method(mesh, pb, method, method_options(o));

    const std::string base = stem(o, "_" + std::to_string(nx) + "x" + std::to_string(ny));
    const VelocityField u = r.velocity ? *r.velocity : sample_galerkin_velocity(mesh, r.potential, pb.conductivity);
    io::write_vtk_file(base + ".vtk", mesh, {&r.potential, &u}, o.problem + " " + o.method);
    std::printf("problem %s, method %s, Q%d, %lldx%lld mesh, %lld nodes\n", o.problem.c_str(), o.method.c_str(), o.degree,
                static_cast<long long>(nx), static_cast<long long>(ny), static_cast<long long>(mesh.num_nodes()));
    std::printf("wrote %s.vtk\n", base.c_str());

    if (pb.exact) {
        ConvergenceReport rep;
        rep.problem = pb.name;
        rep.method = method;
        rep.degree = o.degree;
        rep.rows.push_back(measure_errors(mesh, pb, r));
        io::write_csv_file(base + ".csv", rep);
        const auto& row = rep.rows.front();
        std::printf("h %.6g  L2(p) %.6e  H1(p) %.6e  L2(u) %.6e  L2(div u) %.6e\n", row.h, row.l2_p, row.h1_p, row.l2_u, row.l2_div);
        std::printf("wrote %s.csv\n", base.c_str());
    }
}

void converge(const Options& o)
{
    const ProblemDefinition pb = builtin_problem(o.problem, o.gamma);
    const Method method = parse_method(o.method);
    const ConvergenceReport rep = run_convergence(pb, method, o.degree, parse_list(o.meshes), method_options(o));

    std::printf("%-10s %10s %12s %12s %12s %12s\n", "mesh", "h", "L2(p)", "H1(p)", "L2(u)", "L2(div u)");
    for (const auto& row : rep.rows) {
        const std::string m = std::to_string(row.nx) + "x" + std::to_string(row.ny);
        std::printf("%-10s %10.4g %12.4e %12.4e %12.4e %12.4e\n", m.c_str(), row.h, row.l2_p, row.h1_p, row.l2_u, row.l2_div);
    }
    if (rep.rows.size() >= 2) {
        std::printf("\n%-10s %10s %10s %10s %10s\n", "rates", "L2(p)", "H1(p)", "L2(u)", "L2(div u)");
        for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i) print_rates(("pair " + std::to_string(i + 1)).c_str(), rep.pairwise_rate(i));
        print_rates("fitted", rep.fitted_rate());
    }

    const std::string base = stem(o, "");
    io::write_csv_file(base + ".csv", rep);
    io::write_svg_plot_file(base + ".svg", rep);
    std::printf("wrote %s.csv and %s.svg\n", base.c_str(), base.c_str());
}

void add_common(CLI::App* cmd, Options& o)
{
    std::vector<std::string> methods;
    for (Method m : all_methods) methods.emplace_back(to_string(m));
    cmd->add_option("--problem", o.problem, "Benchmark problem")->required()->check(CLI::IsMember(builtin_problem_names()));
    cmd->add_option("--method", o.method, "Solution method")->required()->check(CLI::IsMember(methods));
    cmd->add_option("--degree", o.degree, "Element degree")->check(CLI::IsMember({1, 2}))->capture_default_str();
    cmd->add_option("--macros", o.macros, "Macroelement size in elements for lpp/lpp_id")->capture_default_str();
    cmd->add_option("--delta1", o.delta1, "GLS parameter delta1")->capture_default_str();
    cmd->add_option("--delta2", o.delta2, "GLS parameter delta2")->capture_default_str();
    cmd->add_option("--gamma", o.gamma, "Anisotropy parameter of the crumpton problem")->capture_default_str();
    cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
}

int fail(const std::string& message, const std::string& kind)
{
    std::cerr << nlohmann::json{{"error", message}, {"kind", kind}}.dump() << std::endl;
    return 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Velocity recovery and stabilized mixed methods for heterogeneous Darcy flow"};
    app.require_subcommand(1);
    Options o;

    CLI::App* run_cmd = app.add_subcommand("run", "Solve one problem on one mesh and write VTK (and CSV errors when an exact solution exists)");
    add_common(run_cmd, o);
    run_cmd->add_option("--mesh", o.mesh, "Mesh size NXxNY")->required();

    CLI::App* conv_cmd = app.add_subcommand("converge", "Mesh-refinement study against the exact solution; writes CSV and SVG");
    add_common(conv_cmd, o);
    conv_cmd->add_option("--meshes", o.meshes, "Comma-separated n for n x n meshes")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(e.what(), "usage");
    }

    try {
        if (run_cmd->parsed()) run(o);
        else converge(o);
    } catch (const Error& e) {
        return fail(e.what(), e.kind());
    } catch (const std::filesystem::filesystem_error& e) {
        return fail(e.what(), "io");
    } catch (const std::exception& e) {
        return fail(e.what(), "internal");
    }
    return 0;
}
