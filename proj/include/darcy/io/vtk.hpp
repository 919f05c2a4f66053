#pragma once

// Legacy ASCII VTK unstructured grids. Fields that are single-valued at the
// nodes share points; two-sided and macro-discontinuous velocities are written
// with one private copy of the points per element, so each element carries
// its own interface values.

#include "darcy/fields.hpp"

#include <array>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>

namespace darcy::io {

inline constexpr int vtk_quad = 9;
inline constexpr int vtk_biquadratic_quad = 28;

/// VTK point order of the local (lexicographic) element nodes.
inline const std::vector<int>& vtk_node_order(int degree)
{
    static const std::vector<int> q1{0, 1, 3, 2};
    static const std::vector<int> q2{0, 2, 8, 6, 1, 5, 7, 3, 4};
    check_degree(degree);
    return degree == 1 ? q1 : q2;
}

struct VtkFields {
    const ScalarField* potential = nullptr;
    const VelocityField* velocity = nullptr;
};

inline void write_vtk(std::ostream& os, const Mesh& mesh, const VtkFields& fields, const std::string& title = "darcy")
{
    const int nloc = mesh.nodes_per_element();
    const bool duplicate = fields.velocity && fields.velocity->storage != VelocityStorage::c0_nodal;
    if (fields.potential) DARCY_REQUIRE(fields.potential->values.size() == mesh.num_nodes(), InvalidArgument, "potential size mismatch");
    if (fields.velocity)
        DARCY_REQUIRE(static_cast<Index>(fields.velocity->element_values.size()) == mesh.num_elements() * nloc, InvalidArgument,
                      "velocity size mismatch");
    const auto& order = vtk_node_order(mesh.degree);
    const Index npoints = duplicate ? mesh.num_elements() * nloc : mesh.num_nodes();

    // Point p of the output maps to (element, local node) or to a mesh node.
    auto mesh_node = [&](Index p) { return duplicate ? mesh.element(p / nloc).node_ids[static_cast<std::size_t>(p % nloc)] : p; };

    os << std::setprecision(17);
    os << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
    os << "POINTS " << npoints << " double\n";
    for (Index p = 0; p < npoints; ++p) {
        const Point x = mesh.node_point(mesh_node(p));
        os << x.x() << ' ' << x.y() << " 0\n";
    }
    os << "CELLS " << mesh.num_elements() << ' ' << mesh.num_elements() * (nloc + 1) << '\n';
    for (const auto& el : mesh.elements) {
        os << nloc;
        for (int a : order) os << ' ' << (duplicate ? el.id * nloc + a : el.node_ids[static_cast<std::size_t>(a)]);
        os << '\n';
    }
    os << "CELL_TYPES " << mesh.num_elements() << '\n';
    for (Index e = 0; e < mesh.num_elements(); ++e) os << (mesh.degree == 1 ? vtk_quad : vtk_biquadratic_quad) << '\n';

    os << "CELL_DATA " << mesh.num_elements() << "\nSCALARS subdomain int 1\nLOOKUP_TABLE default\n";
    for (const auto& el : mesh.elements) os << el.subdomain << '\n';

    if (!fields.potential && !fields.velocity) return;
    os << "POINT_DATA " << npoints << '\n';
    if (fields.potential) {
        os << "SCALARS potential double 1\nLOOKUP_TABLE default\n";
        for (Index p = 0; p < npoints; ++p) os << fields.potential->values(mesh_node(p)) << '\n';
    }
    if (fields.velocity) {
        os << "VECTORS velocity double\n";
        for (Index p = 0; p < npoints; ++p) {
            const Vector2 v = duplicate ? fields.velocity->element_values[static_cast<std::size_t>(p)]
                                        : fields.velocity->nodal_values[static_cast<std::size_t>(p)];
            os << v.x() << ' ' << v.y() << " 0\n";
        }
    }
}

inline void write_vtk_file(const std::string& path, const Mesh& mesh, const VtkFields& fields, const std::string& title = "darcy")
{
    std::ofstream os(path);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    write_vtk(os, mesh, fields, title);
    if (!os) throw IoError("failed writing '" + path + "'");
}

} // namespace darcy::io
