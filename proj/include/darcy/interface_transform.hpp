#pragma once

// Nodal transformation relating the two traces of a velocity field across a
// material interface. With lambda_i = K_i^{-1},
//   T_i = [ (lambda_i^T tau)^T ]      so that   T_i u = ( tau . lambda_i u , n . u ).
//         [        n^T         ]
// The interface conditions (u1.n = u2.n and lambda1 u1.tau = lambda2 u2.tau)
// read T1 u1 = T2 u2. Side 2 (higher subdomain id) carries the reference
// value u_bar, so u2 = u_bar and u1 = T1^{-1} T2 u_bar.

#include "darcy/conductivity.hpp"
#include "darcy/mesh.hpp"

#include <map>

namespace darcy {

struct InterfaceTransform {
    Index node = 0;
    int side1 = 0, side2 = 0;
    Vector2 normal = Vector2::Zero();
    Vector2 tangent = Vector2::Zero();
    Tensor2 t1 = Tensor2::Identity();
    Tensor2 t2 = Tensor2::Identity();
    /// Maps the reference (side 2) value to the side 1 value.
    Tensor2 t = Tensor2::Identity();
};

inline Tensor2 interface_row_matrix(const Tensor2& resistivity, const Vector2& normal, const Vector2& tangent)
{
    Tensor2 m;
    m.row(0) = (resistivity.transpose() * tangent).transpose();
    m.row(1) = normal.transpose();
    return m;
}

inline InterfaceTransform build_interface_transform(const InterfaceFrame& frame, const Tensor2& k1, const Tensor2& k2)
{
    InterfaceTransform tr;
    tr.node = frame.node;
    tr.side1 = frame.side1;
    tr.side2 = frame.side2;
    tr.normal = frame.normal;
    tr.tangent = frame.tangent;
    tr.t1 = interface_row_matrix(k1.inverse(), frame.normal, frame.tangent);
    tr.t2 = interface_row_matrix(k2.inverse(), frame.normal, frame.tangent);
    const double det = tr.t1.determinant();
    DARCY_REQUIRE(std::abs(det) >= 1e-12, GeometryError, "singular interface matrix T1 at node " + std::to_string(frame.node));
    tr.t = tr.t1.inverse() * tr.t2;
    return tr;
}

using TransformMap = std::map<Index, InterfaceTransform>;

inline TransformMap build_interface_transforms(const std::vector<InterfaceFrame>& frames, const ConductivityField& k)
{
    TransformMap out;
    for (const auto& f : frames)
        out.emplace(f.node, build_interface_transform(f, k.conductivity(f.side1), k.conductivity(f.side2)));
    return out;
}

/// Residuals of the interface conditions for a pair of traces:
/// (u1.n - u2.n, lambda1 u1.tau - lambda2 u2.tau).
inline Vector2 interface_condition_residual(const InterfaceTransform& tr, const Vector2& u1, const Vector2& u2, const Tensor2& lambda1,
                                            const Tensor2& lambda2)
{
    return {tr.normal.dot(u1 - u2), tr.tangent.dot(lambda1 * u1) - tr.tangent.dot(lambda2 * u2)};
}

} // namespace darcy
