#pragma once

// Sparse assembly, strong constraints and direct solution.

#include "darcy/core.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <map>
#include <ostream>
#include <span>
#include <vector>

namespace darcy {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

enum class MatrixKind { symmetric, general };

class LinearSystem {
public:
    LinearSystem() = default;
    LinearSystem(Index size, MatrixKind kind) : size_(size), kind_(kind), rhs_(Eigen::VectorXd::Zero(size)) {}

    Index size() const { return size_; }
    MatrixKind kind() const { return kind_; }

    /// Additive scatter of an element block. Rows and columns share `dofs`.
    void accumulate(std::span<const Index> dofs, const Eigen::MatrixXd& block, const Eigen::VectorXd& rhs)
    {
        const auto n = static_cast<Index>(dofs.size());
        DARCY_REQUIRE(block.rows() == n && block.cols() == n && rhs.size() == n, InvalidArgument,
                      "element block does not match dof map size");
        for (Index d : dofs) DARCY_REQUIRE(d >= 0 && d < size_, InvalidArgument, "dof index " + std::to_string(d) + " out of range");
        for (Index i = 0; i < n; ++i) {
            rhs_(dofs[i]) += rhs(i);
            for (Index j = 0; j < n; ++j)
                if (block(i, j) != 0.0) triplets_.emplace_back(dofs[i], dofs[j], block(i, j));
        }
        finalized_ = false;
    }

    void add(Index row, Index col, double value)
    {
        DARCY_REQUIRE(row >= 0 && row < size_ && col >= 0 && col < size_, InvalidArgument, "entry index out of range");
        triplets_.emplace_back(row, col, value);
        finalized_ = false;
    }

    void add_rhs(Index row, double value)
    {
        DARCY_REQUIRE(row >= 0 && row < size_, InvalidArgument, "rhs index out of range");
        rhs_(row) += value;
    }

    /// Prescribes x[dof] = value. Repeating an equal value is accepted.
    void constrain(Index dof, double value)
    {
        DARCY_REQUIRE(dof >= 0 && dof < size_, InvalidArgument, "constrained dof " + std::to_string(dof) + " out of range");
        const auto [it, inserted] = constraints_.emplace(dof, value);
        DARCY_REQUIRE(inserted || it->second == value, InvalidArgument,
                      "conflicting constraint values for dof " + std::to_string(dof));
    }

    const std::map<Index, double>& constraints() const { return constraints_; }

    void finalize()
    {
        if (finalized_) return;
        matrix_.resize(size_, size_);
        matrix_.setFromTriplets(triplets_.begin(), triplets_.end());
        matrix_.makeCompressed();
        finalized_ = true;
    }

    const SparseMatrix& matrix()
    {
        finalize();
        return matrix_;
    }
    const SparseMatrix& matrix() const
    {
        DARCY_REQUIRE(finalized_, Error, "linear system not finalized");
        return matrix_;
    }
    const Eigen::VectorXd& rhs() const { return rhs_; }
    bool constraints_applied() const { return constraints_applied_; }

    friend LinearSystem apply_dirichlet(const LinearSystem& system);

private:
    Index size_ = 0;
    MatrixKind kind_ = MatrixKind::general;
    std::vector<Eigen::Triplet<double, Index>> triplets_;
    SparseMatrix matrix_;
    Eigen::VectorXd rhs_;
    std::map<Index, double> constraints_;
    bool finalized_ = false;
    bool constraints_applied_ = false;
};

/// Eliminates constrained rows and columns, moving the known values to the
/// right-hand side. Symmetric matrices stay symmetric.
inline LinearSystem apply_dirichlet(const LinearSystem& system)
{
    LinearSystem out = system;
    out.finalize();
    if (out.constraints_.empty() || out.constraints_applied_) return out;

    std::vector<char> fixed(static_cast<std::size_t>(out.size_), 0);
    Eigen::VectorXd values = Eigen::VectorXd::Zero(out.size_);
    for (const auto& [dof, v] : out.constraints_) {
        fixed[static_cast<std::size_t>(dof)] = 1;
        values(dof) = v;
    }

    std::vector<Eigen::Triplet<double, Index>> kept;
    kept.reserve(static_cast<std::size_t>(out.matrix_.nonZeros()));
    for (Index r = 0; r < out.matrix_.outerSize(); ++r) {
        for (SparseMatrix::InnerIterator it(out.matrix_, r); it; ++it) {
            const Index c = it.col();
            const bool row_fixed = fixed[static_cast<std::size_t>(r)] != 0;
            const bool col_fixed = fixed[static_cast<std::size_t>(c)] != 0;
            if (row_fixed) continue;
            if (col_fixed) {
                out.rhs_(r) -= it.value() * values(c);
                continue;
            }
            kept.emplace_back(r, c, it.value());
        }
    }
    for (const auto& [dof, v] : out.constraints_) {
        kept.emplace_back(dof, dof, 1.0);
        out.rhs_(dof) = v;
    }
    out.triplets_ = std::move(kept);
    out.finalized_ = false;
    out.finalize();
    out.constraints_applied_ = true;
    return out;
}

inline double relative_residual(const SparseMatrix& a, const Eigen::VectorXd& x, const Eigen::VectorXd& b)
{
    const double bn = b.norm();
    const double rn = (a * x - b).norm();
    return bn > 0.0 ? rn / bn : rn;
}

/// Direct sparse LU solve with a few steps of iterative refinement. The
/// result satisfies ||Ax - b|| / ||b|| <= tolerance or SolverError is thrown.
inline Eigen::VectorXd solve(const LinearSystem& system, double tolerance = 1e-10)
{
    const LinearSystem reduced = system.constraints_applied() ? system : apply_dirichlet(system);
    const SparseMatrix& a = reduced.matrix();
    const Eigen::VectorXd& b = reduced.rhs();
    if (reduced.size() == 0) return {};

    Eigen::SparseMatrix<double> colmajor = a;
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(colmajor);
    lu.factorize(colmajor);
    if (lu.info() != Eigen::Success) throw SolverError("sparse LU factorization failed: " + lu.lastErrorMessage(), 1.0);

    Eigen::VectorXd x = lu.solve(b);
    double res = relative_residual(a, x, b);
    for (int step = 0; step < 3 && res > 1e-14; ++step) {
        x += lu.solve(b - a * x);
        res = relative_residual(a, x, b);
    }
    if (!x.allFinite() || !(res <= tolerance)) throw SolverError("linear solve did not reach the residual target", res);
    for (const auto& [dof, v] : reduced.constraints()) x(dof) = v;
    return x;
}

/// max |A - A^T| over all entries.
inline double max_asymmetry(const SparseMatrix& a)
{
    const SparseMatrix diff = SparseMatrix(a.transpose()) - a;
    double m = 0.0;
    for (Index r = 0; r < diff.outerSize(); ++r)
        for (SparseMatrix::InnerIterator it(diff, r); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
}

/// Coordinate-format dump ("row col value", 0-based, one entry per line).
inline void write_coordinate(std::ostream& os, const SparseMatrix& a)
{
    os.precision(17);
    os << a.rows() << ' ' << a.cols() << ' ' << a.nonZeros() << '\n';
    for (Index r = 0; r < a.outerSize(); ++r)
        for (SparseMatrix::InnerIterator it(a, r); it; ++it) os << r << ' ' << it.col() << ' ' << it.value() << '\n';
}

} // namespace darcy
