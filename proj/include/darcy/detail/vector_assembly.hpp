#pragma once

// Shared assembly for the velocity post-processings: a C0 vector field over
// a set of elements, optionally with interface nodes whose side-1 values are
// tied to a single reference value through the nodal transform. The element
// transform multiplies the columns of side-1 element matrices belonging to
// interface nodes (K_bar = K T); test functions stay untransformed.

#include "darcy/fields.hpp"
#include "darcy/interface_transform.hpp"
#include "darcy/linear_system.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace darcy::detail {

struct ElementBlock {
    Eigen::MatrixXd matrix; ///< 2 nloc x 2 nloc, dofs interleaved per local node
    Eigen::VectorXd rhs;
};

using ElementKernel = std::function<ElementBlock(Index element)>;

/// Local numbering of the nodes touched by a set of elements, in increasing
/// global order (the identity when all elements are included).
struct NodeNumbering {
    std::vector<Index> global; ///< local -> global
    std::unordered_map<Index, Index> local;

    Index size() const { return static_cast<Index>(global.size()); }
};

inline NodeNumbering number_nodes(const Mesh& mesh, const std::vector<Index>& elements)
{
    NodeNumbering nn;
    for (Index e : elements)
        for (Index n : mesh.element(e).node_ids) nn.global.push_back(n);
    std::sort(nn.global.begin(), nn.global.end());
    nn.global.erase(std::unique(nn.global.begin(), nn.global.end()), nn.global.end());
    for (Index l = 0; l < nn.size(); ++l) nn.local.emplace(nn.global[static_cast<std::size_t>(l)], l);
    return nn;
}

/// Block-diagonal element transform (identity except for side-1 interface nodes).
inline Eigen::MatrixXd element_transform(const Mesh& mesh, Index e, const TransformMap& transforms, bool& touched)
{
    const auto& el = mesh.element(e);
    const int nloc = mesh.nodes_per_element();
    Eigen::MatrixXd t = Eigen::MatrixXd::Identity(2 * nloc, 2 * nloc);
    touched = false;
    for (int a = 0; a < nloc; ++a) {
        const auto it = transforms.find(el.node_ids[a]);
        if (it == transforms.end()) continue;
        const InterfaceTransform& tr = it->second;
        if (el.subdomain == tr.side1) {
            t.block<2, 2>(2 * a, 2 * a) = tr.t;
            touched = true;
        } else if (el.subdomain != tr.side2) {
            throw GeometryError("element " + std::to_string(e) + " of subdomain " + std::to_string(el.subdomain) +
                                " touches an interface node between subdomains " + std::to_string(tr.side1) + " and " +
                                std::to_string(tr.side2));
        }
    }
    return t;
}

inline LinearSystem assemble_vector_problem(const Mesh& mesh, const std::vector<Index>& elements, const NodeNumbering& nn,
                                            const ElementKernel& kernel, const TransformMap& transforms)
{
    const MatrixKind kind = transforms.empty() ? MatrixKind::symmetric : MatrixKind::general;
    LinearSystem sys(2 * nn.size(), kind);
    const int nloc = mesh.nodes_per_element();
    std::vector<Index> dofs(static_cast<std::size_t>(2 * nloc));
    for (Index e : elements) {
        ElementBlock blk = kernel(e);
        if (!transforms.empty()) {
            bool touched = false;
            const Eigen::MatrixXd t = element_transform(mesh, e, transforms, touched);
            if (touched) blk.matrix = blk.matrix * t;
        }
        const auto& el = mesh.element(e);
        for (int a = 0; a < nloc; ++a) {
            const Index l = nn.local.at(el.node_ids[a]);
            dofs[2 * a] = 2 * l;
            dofs[2 * a + 1] = 2 * l + 1;
        }
        sys.accumulate(dofs, blk.matrix, blk.rhs);
    }
    sys.finalize();
    return sys;
}

/// Per-element coefficients from reference nodal values, applying the
/// transform on side-1 elements.
inline void scatter_element_values(const Mesh& mesh, const std::vector<Index>& elements, const NodeNumbering& nn,
                                   const Eigen::VectorXd& reference, const TransformMap& transforms, VelocityField& out)
{
    const int nloc = mesh.nodes_per_element();
    for (Index e : elements) {
        const auto& el = mesh.element(e);
        for (int a = 0; a < nloc; ++a) {
            const Index n = el.node_ids[a];
            const Index l = nn.local.at(n);
            Vector2 v(reference(2 * l), reference(2 * l + 1));
            const auto it = transforms.find(n);
            if (it != transforms.end() && el.subdomain == it->second.side1) v = it->second.t * v;
            out.element_values[static_cast<std::size_t>(e * nloc + a)] = v;
        }
    }
}

/// Two-sided interface values (side 2 = reference, side 1 = T * reference).
inline void collect_two_sided(const NodeNumbering& nn, const Eigen::VectorXd& reference, const TransformMap& transforms,
                              std::map<Index, TwoSidedValue>& out)
{
    for (const auto& [node, tr] : transforms) {
        const auto it = nn.local.find(node);
        if (it == nn.local.end()) continue;
        const Vector2 ubar(reference(2 * it->second), reference(2 * it->second + 1));
        out[node] = {tr.t * ubar, ubar, tr.side1, tr.side2};
    }
}

} // namespace darcy::detail
