#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spca {

// Symmetric linear operator: supplies y = Sigma*x, diagonal access and the
// dimension. Concrete forms cover a dense symmetric matrix, the Gram matrix
// A^T A of a data matrix (never materialized), a 0/1 graph adjacency and a
// scalar-shifted wrapper. Operators are immutable after construction and
// safe to share across concurrent solver runs.
class SymmetricOperator {
public:
    virtual ~SymmetricOperator() = default;

    int dim() const noexcept { return n_; }

    // y = Sigma * x. Both spans must have length dim().
    virtual void apply(std::span<const double> x, std::span<double> y) const = 0;

    virtual double diag(int i) const = 0;

    // Allocating, dimension-checked matvec.
    std::vector<double> matvec(std::span<const double> x) const;

    // Smallest index attaining the maximum diagonal entry.
    int largest_diag_index() const;

protected:
    explicit SymmetricOperator(int n);

private:
    int n_;
};

using OperatorPtr = std::shared_ptr<const SymmetricOperator>;

// Dense symmetric matrix, row-major storage. The constructor rejects inputs
// whose asymmetry exceeds 1e-8 and stores the exact symmetrization.
class DenseOperator final : public SymmetricOperator {
public:
    DenseOperator(int n, std::vector<double> row_major);

    void apply(std::span<const double> x, std::span<double> y) const override;
    double diag(int i) const override;

    const std::vector<double>& data() const noexcept { return a_; }
    double entry(int i, int j) const { return a_[static_cast<std::size_t>(i) * dim() + j]; }

private:
    std::vector<double> a_;
};

// Sigma = A^T A for an m-by-n data matrix A (row-major). apply computes
// A^T (A x); the diagonal (squared column norms) is cached at construction.
class GramOperator final : public SymmetricOperator {
public:
    GramOperator(int m, int n, std::vector<double> a_row_major);

    void apply(std::span<const double> x, std::span<double> y) const override;
    double diag(int i) const override;

    int rows() const noexcept { return m_; }
    const std::vector<double>& data_matrix() const noexcept { return a_; }

private:
    int m_;
    std::vector<double> a_;
    std::vector<double> col_sqnorm_;
};

// Simple-graph adjacency (0/1 weights, zero diagonal), CSR storage.
class SparseAdjacencyOperator final : public SymmetricOperator {
public:
    // Edges as undirected pairs; duplicates and self-loops must already be
    // removed by the caller (loaders take care of that).
    SparseAdjacencyOperator(int n, const std::vector<std::pair<int, int>>& edges);

    void apply(std::span<const double> x, std::span<double> y) const override;
    double diag(int) const override { return 0.0; }

    std::size_t edge_count() const noexcept { return n_edges_; }
    int degree(int i) const { return static_cast<int>(row_ptr_[i + 1] - row_ptr_[i]); }
    int max_degree() const;
    bool has_edge(int i, int j) const;

private:
    std::vector<std::size_t> row_ptr_;
    std::vector<int> col_idx_;
    std::size_t n_edges_;
};

// base + shift * I.
class ShiftedOperator final : public SymmetricOperator {
public:
    ShiftedOperator(OperatorPtr base, double shift);

    void apply(std::span<const double> x, std::span<double> y) const override;
    double diag(int i) const override { return base_->diag(i) + shift_; }

    double shift() const noexcept { return shift_; }
    const OperatorPtr& base() const noexcept { return base_; }

private:
    OperatorPtr base_;
    double shift_;
};

struct PowerMethodResult {
    double lambda;                    // Rayleigh quotient at the returned vector
    std::vector<double> eigenvector;  // unit norm
    int iterations;
};

struct PowerMethodError : std::runtime_error {
    PowerMethodError(const std::string& what, double residual)
        : std::runtime_error(what), last_residual(residual) {}
    double last_residual;
};

// Power iteration started from the basis vector with the largest diagonal
// entry. Converges to the eigenvalue of largest magnitude (callers shift
// indefinite operators first); declares convergence on the eigen-residual
// ||Sigma y - lambda y|| <= tol * |lambda|.
PowerMethodResult power_method(const SymmetricOperator& op, double tol, int max_iter);

}  // namespace spca
