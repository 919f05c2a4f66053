#pragma once

#include "darcy/core.hpp"

#include <map>

namespace darcy {

/// Piecewise-constant conductivity K per subdomain, with the resistivity
/// lambda = K^{-1} cached alongside.
class ConductivityField {
public:
    ConductivityField() = default;
    ConductivityField(std::initializer_list<std::pair<const int, Tensor2>> init)
    {
        for (const auto& [id, k] : init) set(id, k);
    }

    void set(int subdomain, const Tensor2& k)
    {
        DARCY_REQUIRE(k.allFinite(), InvalidArgument, "conductivity has non-finite entries");
        DARCY_REQUIRE(std::abs(k(0, 1) - k(1, 0)) <= 1e-14 * k.norm(), InvalidArgument,
                      "conductivity of subdomain " + std::to_string(subdomain) + " is not symmetric");
        Eigen::LLT<Tensor2> llt(k);
        DARCY_REQUIRE(llt.info() == Eigen::Success && k(0, 0) > 0.0 && k.determinant() > 0.0, InvalidArgument,
                      "conductivity of subdomain " + std::to_string(subdomain) + " is not positive definite");
        conductivity_[subdomain] = k;
        resistivity_[subdomain] = k.inverse();
    }

    const Tensor2& conductivity(int subdomain) const { return lookup(conductivity_, subdomain); }
    const Tensor2& resistivity(int subdomain) const { return lookup(resistivity_, subdomain); }

    /// Scalar surrogate tr(lambda)/2 used where lambda multiplies a divergence.
    double scalar_resistivity(int subdomain) const { return 0.5 * resistivity(subdomain).trace(); }

    bool contains(int subdomain) const { return conductivity_.count(subdomain) > 0; }
    const std::map<int, Tensor2>& tensors() const { return conductivity_; }

private:
    static const Tensor2& lookup(const std::map<int, Tensor2>& m, int subdomain)
    {
        const auto it = m.find(subdomain);
        DARCY_REQUIRE(it != m.end(), InvalidArgument, "no conductivity for subdomain " + std::to_string(subdomain));
        return it->second;
    }

    std::map<int, Tensor2> conductivity_;
    std::map<int, Tensor2> resistivity_;
};

inline Tensor2 isotropic(double k) { return k * Tensor2::Identity(); }

} // namespace darcy
