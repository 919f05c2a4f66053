#pragma once

// Structured quadrilateral meshes conforming to material interfaces.

#include "darcy/core.hpp"
#include "darcy/fe_basis.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace darcy {

enum class Side : int { south = 0, east = 1, north = 2, west = 3 };

inline const char* to_string(Side s)
{
    switch (s) {
    case Side::south: return "south";
    case Side::east: return "east";
    case Side::north: return "north";
    case Side::west: return "west";
    }
    return "?";
}

struct Rect {
    double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
};

struct Node {
    Index id = 0;
    double x = 0.0, y = 0.0;

    Point point() const { return {x, y}; }
};

struct Element {
    Index id = 0;
    std::vector<Index> node_ids; ///< lexicographic, see fe_basis.hpp
    int subdomain = 0;
};

struct BoundaryEdge {
    Index element = 0;
    Side local_edge = Side::south;
    Side tag = Side::south;
};

/// Edge shared by two elements of different subdomains. The "left" element
/// always carries the lower subdomain id.
struct InterfaceEdge {
    Index element_left = 0, element_right = 0;
    Side local_edge_left = Side::south, local_edge_right = Side::north;
    int subdomain_left = 0, subdomain_right = 0;
    /// Unit normal pointing from the left (lower id) element into the right one.
    Vector2 normal = Vector2::Zero();
};

using SubdomainClassifier = std::function<int(const Point&)>;

class Mesh {
public:
    int degree = 1;
    Index nx = 0, ny = 0;
    Rect rect;
    std::vector<Node> nodes;
    std::vector<Element> elements;
    std::vector<BoundaryEdge> boundary_edges;
    std::vector<InterfaceEdge> interface_edges;

    Index num_nodes() const { return static_cast<Index>(nodes.size()); }
    Index num_elements() const { return static_cast<Index>(elements.size()); }
    int nodes_per_element() const { return darcy::nodes_per_element(degree); }

    /// Node lattice has (degree*nx + 1) x (degree*ny + 1) points.
    Index lattice_nx() const { return degree * nx + 1; }
    Index lattice_ny() const { return degree * ny + 1; }
    Index node_at(Index i, Index j) const { return j * lattice_nx() + i; }
    Index element_at(Index i, Index j) const { return j * nx + i; }
    Index element_column(Index e) const { return e % nx; }
    Index element_row(Index e) const { return e / nx; }

    Point node_point(Index n) const { return nodes[static_cast<std::size_t>(n)].point(); }
    const Element& element(Index e) const { return elements[static_cast<std::size_t>(e)]; }

    ElementGeometry geometry(Index e) const
    {
        const Element& el = element(e);
        const int k = degree;
        const std::array<int, 4> corner_local{0, k, k * (k + 1), (k + 1) * (k + 1) - 1};
        std::array<Point, 4> corners;
        for (int c = 0; c < 4; ++c) corners[c] = node_point(el.node_ids[corner_local[c]]);
        return ElementGeometry(corners);
    }

    double max_element_diameter() const
    {
        double h = 0.0;
        for (Index e = 0; e < num_elements(); ++e) h = std::max(h, geometry(e).diameter());
        return h;
    }

    /// Elements sharing node n.
    const std::vector<Index>& node_elements(Index n) const { return node_to_elements_[static_cast<std::size_t>(n)]; }

    /// Local node indices along a local edge, ordered by increasing reference coordinate.
    static std::vector<int> edge_local_nodes(int k, Side edge)
    {
        std::vector<int> out;
        for (int t = 0; t <= k; ++t) {
            switch (edge) {
            case Side::south: out.push_back(t); break;
            case Side::north: out.push_back(k * (k + 1) + t); break;
            case Side::west: out.push_back(t * (k + 1)); break;
            case Side::east: out.push_back(t * (k + 1) + k); break;
            }
        }
        return out;
    }

    std::vector<Index> edge_nodes(Index e, Side edge) const
    {
        std::vector<Index> out;
        for (int a : edge_local_nodes(degree, edge)) out.push_back(element(e).node_ids[a]);
        return out;
    }

    /// Nodes on the boundary sides selected by `sides` (bit i set for Side i).
    std::vector<Index> boundary_nodes(unsigned sides) const
    {
        std::set<Index> out;
        for (const auto& be : boundary_edges)
            if (sides & (1u << static_cast<int>(be.tag)))
                for (Index n : edge_nodes(be.element, be.local_edge)) out.insert(n);
        return {out.begin(), out.end()};
    }

    void build_adjacency()
    {
        node_to_elements_.assign(nodes.size(), {});
        for (const auto& el : elements)
            for (Index n : el.node_ids) node_to_elements_[static_cast<std::size_t>(n)].push_back(el.id);
    }

private:
    std::vector<std::vector<Index>> node_to_elements_;
};

inline constexpr unsigned side_bit(Side s) { return 1u << static_cast<int>(s); }
inline constexpr unsigned all_sides = 0xFu;

/// Tensor-product mesh of nx x ny cells on `rect`. Each cell takes the
/// subdomain of its centroid; cells whose interior samples disagree are
/// rejected since the mesh must conform to the interfaces.
inline Mesh build_structured_mesh(Index nx, Index ny, const Rect& rect, int degree, const SubdomainClassifier& classify)
{
    DARCY_REQUIRE(nx >= 1 && ny >= 1, InvalidArgument, "mesh needs at least one cell per direction");
    check_degree(degree);
    DARCY_REQUIRE(rect.x1 > rect.x0 && rect.y1 > rect.y0, InvalidArgument, "degenerate rectangle");

    Mesh mesh;
    mesh.degree = degree;
    mesh.nx = nx;
    mesh.ny = ny;
    mesh.rect = rect;

    const Index lx = mesh.lattice_nx(), ly = mesh.lattice_ny();
    mesh.nodes.reserve(static_cast<std::size_t>(lx * ly));
    for (Index j = 0; j < ly; ++j) {
        for (Index i = 0; i < lx; ++i) {
            // Exact endpoints so that interface coordinates are reproduced bit-for-bit.
            const double x = i == lx - 1 ? rect.x1 : rect.x0 + rect.width() * static_cast<double>(i) / static_cast<double>(lx - 1);
            const double y = j == ly - 1 ? rect.y1 : rect.y0 + rect.height() * static_cast<double>(j) / static_cast<double>(ly - 1);
            mesh.nodes.push_back({j * lx + i, x, y});
        }
    }

    const int k = degree;
    mesh.elements.reserve(static_cast<std::size_t>(nx * ny));
    for (Index j = 0; j < ny; ++j) {
        for (Index i = 0; i < nx; ++i) {
            Element el;
            el.id = mesh.element_at(i, j);
            for (int iy = 0; iy <= k; ++iy)
                for (int ix = 0; ix <= k; ++ix) el.node_ids.push_back(mesh.node_at(k * i + ix, k * j + iy));
            mesh.elements.push_back(std::move(el));
        }
    }
    mesh.build_adjacency();

    for (auto& el : mesh.elements) {
        const ElementGeometry geo = mesh.geometry(el.id);
        el.subdomain = classify(geo.map({0.0, 0.0}));
        for (double s : {-0.9, 0.0, 0.9}) {
            for (double t : {-0.9, 0.0, 0.9}) {
                if (classify(geo.map({s, t})) != el.subdomain) {
                    throw GeometryError("cell " + std::to_string(el.id) + " straddles a subdomain interface");
                }
            }
        }
    }

    for (Index j = 0; j < ny; ++j) {
        for (Index i = 0; i < nx; ++i) {
            const Index e = mesh.element_at(i, j);
            if (j == 0) mesh.boundary_edges.push_back({e, Side::south, Side::south});
            if (i == nx - 1) mesh.boundary_edges.push_back({e, Side::east, Side::east});
            if (j == ny - 1) mesh.boundary_edges.push_back({e, Side::north, Side::north});
            if (i == 0) mesh.boundary_edges.push_back({e, Side::west, Side::west});
        }
    }

    auto add_interface = [&](Index ea, Side edge_a, Index eb, Side edge_b, const Vector2& normal_a_to_b) {
        const int sa = mesh.element(ea).subdomain, sb = mesh.element(eb).subdomain;
        if (sa == sb) return;
        InterfaceEdge ie;
        if (sa < sb) {
            ie = {ea, eb, edge_a, edge_b, sa, sb, normal_a_to_b};
        } else {
            ie = {eb, ea, edge_b, edge_a, sb, sa, -normal_a_to_b};
        }
        mesh.interface_edges.push_back(ie);
    };
    for (Index j = 0; j < ny; ++j) {
        for (Index i = 0; i < nx; ++i) {
            const Index e = mesh.element_at(i, j);
            if (i + 1 < nx) add_interface(e, Side::east, mesh.element_at(i + 1, j), Side::west, {1.0, 0.0});
            if (j + 1 < ny) add_interface(e, Side::north, mesh.element_at(i, j + 1), Side::south, {0.0, 1.0});
        }
    }
    return mesh;
}

/// Orthonormal frame at an interface node; `normal` points from subdomain
/// `side1` (lower id) into `side2`, `tangent` is the normal rotated by +90 degrees.
struct InterfaceFrame {
    Index node = 0;
    Vector2 normal = Vector2::Zero();
    Vector2 tangent = Vector2::Zero();
    int side1 = 0, side2 = 0;
};

/// Frames at every node on an interface edge. If `element_subset` is given,
/// only interface edges with both elements in the subset are considered and
/// only those elements count when detecting junctions of three or more media.
/// Where edges with different normals meet, the normals are averaged and
/// renormalized.
inline std::vector<InterfaceFrame> interface_frames(const Mesh& mesh, const std::vector<Index>* element_subset = nullptr)
{
    std::set<Index> subset;
    if (element_subset) subset.insert(element_subset->begin(), element_subset->end());
    auto in_subset = [&](Index e) { return !element_subset || subset.count(e) > 0; };

    struct Accumulator {
        Vector2 normal_sum = Vector2::Zero();
        std::set<std::pair<int, int>> pairs;
    };
    std::map<Index, Accumulator> acc;
    for (const auto& ie : mesh.interface_edges) {
        if (!in_subset(ie.element_left) || !in_subset(ie.element_right)) continue;
        for (Index n : mesh.edge_nodes(ie.element_left, ie.local_edge_left)) {
            auto& a = acc[n];
            // Collinear edges contribute one direction each; identical normals renormalize to themselves.
            a.normal_sum += ie.normal;
            a.pairs.insert({ie.subdomain_left, ie.subdomain_right});
        }
    }

    std::vector<InterfaceFrame> frames;
    frames.reserve(acc.size());
    for (const auto& [node, a] : acc) {
        std::set<int> touching;
        for (Index e : mesh.node_elements(node))
            if (in_subset(e)) touching.insert(mesh.element(e).subdomain);
        if (a.pairs.size() > 1 || touching.size() > 2) {
            const Point p = mesh.node_point(node);
            throw GeometryError("interface junction of three or more media at node " + std::to_string(node) + " (" +
                                std::to_string(p.x()) + ", " + std::to_string(p.y()) + "); nodal transform unsupported");
        }
        const double norm = a.normal_sum.norm();
        if (norm < 1e-8) {
            throw GeometryError("degenerate averaged interface normal at node " + std::to_string(node));
        }
        InterfaceFrame f;
        f.node = node;
        f.normal = a.normal_sum / norm;
        f.tangent = Vector2(-f.normal.y(), f.normal.x());
        f.side1 = a.pairs.begin()->first;
        f.side2 = a.pairs.begin()->second;
        frames.push_back(f);
    }
    return frames;
}

struct Macroelement {
    Index id = 0;
    std::vector<Index> element_ids;
    bool has_interior_interface = false;
};

/// Rectangular blocks of mx x my elements, numbered row-major.
inline std::vector<Macroelement> partition_macroelements(const Mesh& mesh, Index mx, Index my)
{
    DARCY_REQUIRE(mx >= 1 && my >= 1, InvalidArgument, "macroelement block size must be positive");
    DARCY_REQUIRE(mesh.nx % mx == 0 && mesh.ny % my == 0, InvalidArgument,
                  "macroelement block " + std::to_string(mx) + "x" + std::to_string(my) + " does not divide the " +
                      std::to_string(mesh.nx) + "x" + std::to_string(mesh.ny) + " mesh");
    DARCY_REQUIRE(!(mesh.degree == 1 && mx == 1 && my == 1), InvalidArgument,
                  "single bilinear element macroelements are unstable; use at least two elements sharing an edge");

    const Index bx = mesh.nx / mx, by = mesh.ny / my;
    std::vector<Macroelement> macros(static_cast<std::size_t>(bx * by));
    std::vector<Index> owner(static_cast<std::size_t>(mesh.num_elements()));
    for (Index J = 0; J < by; ++J) {
        for (Index I = 0; I < bx; ++I) {
            auto& m = macros[static_cast<std::size_t>(J * bx + I)];
            m.id = J * bx + I;
            for (Index j = J * my; j < (J + 1) * my; ++j) {
                for (Index i = I * mx; i < (I + 1) * mx; ++i) {
                    const Index e = mesh.element_at(i, j);
                    m.element_ids.push_back(e);
                    owner[static_cast<std::size_t>(e)] = m.id;
                }
            }
        }
    }
    for (const auto& ie : mesh.interface_edges) {
        const Index a = owner[static_cast<std::size_t>(ie.element_left)];
        if (a == owner[static_cast<std::size_t>(ie.element_right)]) macros[static_cast<std::size_t>(a)].has_interior_interface = true;
    }
    return macros;
}

} // namespace darcy
