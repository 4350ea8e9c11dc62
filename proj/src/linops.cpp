#include "spca/linops.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "spca/vec.hpp"

namespace spca {

SymmetricOperator::SymmetricOperator(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("operator dimension must be positive");
}

std::vector<double> SymmetricOperator::matvec(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim())
        throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<double> y(x.size());
    apply(x, y);
    return y;
}

int SymmetricOperator::largest_diag_index() const {
    int best = 0;
    double best_val = diag(0);
    for (int i = 1; i < dim(); ++i) {
        const double d = diag(i);
        if (d > best_val) {
            best_val = d;
            best = i;
        }
    }
    return best;
}

DenseOperator::DenseOperator(int n, std::vector<double> row_major)
    : SymmetricOperator(n), a_(std::move(row_major)) {
    if (a_.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("DenseOperator: storage size != n*n");
    double max_abs = 0.0, max_asym = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double u = a_[static_cast<std::size_t>(i) * n + j];
            const double l = a_[static_cast<std::size_t>(j) * n + i];
            max_asym = std::max(max_asym, std::abs(u - l));
            max_abs = std::max({max_abs, std::abs(u), std::abs(l)});
        }
        max_abs = std::max(max_abs, std::abs(a_[static_cast<std::size_t>(i) * n + i]));
    }
    if (max_asym > 1e-8 * std::max(1.0, max_abs))
        throw std::invalid_argument("DenseOperator: input matrix is not symmetric");
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double s = 0.5 * (a_[static_cast<std::size_t>(i) * n + j] +
                                    a_[static_cast<std::size_t>(j) * n + i]);
            a_[static_cast<std::size_t>(i) * n + j] = s;
            a_[static_cast<std::size_t>(j) * n + i] = s;
        }
    }
}

void DenseOperator::apply(std::span<const double> x, std::span<double> y) const {
    const int n = dim();
    for (int i = 0; i < n; ++i) {
        const double* row = a_.data() + static_cast<std::size_t>(i) * n;
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += row[j] * x[j];
        y[i] = s;
    }
}

double DenseOperator::diag(int i) const {
    return a_[static_cast<std::size_t>(i) * dim() + i];
}

GramOperator::GramOperator(int m, int n, std::vector<double> a_row_major)
    : SymmetricOperator(n), m_(m), a_(std::move(a_row_major)) {
    if (m < 1) throw std::invalid_argument("GramOperator: m must be positive");
    if (a_.size() != static_cast<std::size_t>(m) * n)
        throw std::invalid_argument("GramOperator: storage size != m*n");
    col_sqnorm_.assign(n, 0.0);
    for (int r = 0; r < m; ++r) {
        const double* row = a_.data() + static_cast<std::size_t>(r) * n;
        for (int j = 0; j < n; ++j) col_sqnorm_[j] += row[j] * row[j];
    }
}

void GramOperator::apply(std::span<const double> x, std::span<double> y) const {
    const int n = dim();
    std::vector<double> t(m_);
    for (int r = 0; r < m_; ++r) {
        const double* row = a_.data() + static_cast<std::size_t>(r) * n;
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += row[j] * x[j];
        t[r] = s;
    }
    std::fill(y.begin(), y.end(), 0.0);
    for (int r = 0; r < m_; ++r) {
        const double* row = a_.data() + static_cast<std::size_t>(r) * n;
        const double tr = t[r];
        for (int j = 0; j < n; ++j) y[j] += tr * row[j];
    }
}

double GramOperator::diag(int i) const { return col_sqnorm_[i]; }

SparseAdjacencyOperator::SparseAdjacencyOperator(
    int n, const std::vector<std::pair<int, int>>& edges)
    : SymmetricOperator(n) {
    std::set<std::pair<int, int>> unique_edges;
    for (auto [i, j] : edges) {
        if (i < 0 || j < 0 || i >= n || j >= n)
            throw std::invalid_argument("SparseAdjacencyOperator: vertex out of range");
        if (i == j)
            throw std::invalid_argument("SparseAdjacencyOperator: self-loop not allowed");
        unique_edges.emplace(std::min(i, j), std::max(i, j));
    }
    n_edges_ = unique_edges.size();
    std::vector<int> deg(n, 0);
    for (auto [i, j] : unique_edges) {
        ++deg[i];
        ++deg[j];
    }
    row_ptr_.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) row_ptr_[i + 1] = row_ptr_[i] + deg[i];
    col_idx_.resize(row_ptr_[n]);
    std::vector<std::size_t> cursor(row_ptr_.begin(), row_ptr_.end() - 1);
    for (auto [i, j] : unique_edges) {
        col_idx_[cursor[i]++] = j;
        col_idx_[cursor[j]++] = i;
    }
    for (int i = 0; i < n; ++i)
        std::sort(col_idx_.begin() + row_ptr_[i], col_idx_.begin() + row_ptr_[i + 1]);
}

void SparseAdjacencyOperator::apply(std::span<const double> x, std::span<double> y) const {
    const int n = dim();
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) s += x[col_idx_[p]];
        y[i] = s;
    }
}

int SparseAdjacencyOperator::max_degree() const {
    int best = 0;
    for (int i = 0; i < dim(); ++i) best = std::max(best, degree(i));
    return best;
}

bool SparseAdjacencyOperator::has_edge(int i, int j) const {
    return std::binary_search(col_idx_.begin() + row_ptr_[i],
                              col_idx_.begin() + row_ptr_[i + 1], j);
}

ShiftedOperator::ShiftedOperator(OperatorPtr base, double shift)
    : SymmetricOperator(base ? base->dim() : 0), base_(std::move(base)), shift_(shift) {
    if (!base_) throw std::invalid_argument("ShiftedOperator: null base operator");
}

void ShiftedOperator::apply(std::span<const double> x, std::span<double> y) const {
    base_->apply(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += shift_ * x[i];
}

PowerMethodResult power_method(const SymmetricOperator& op, double tol, int max_iter) {
    if (tol <= 0.0) throw std::invalid_argument("power_method: tol must be positive");
    const int n = op.dim();
    std::vector<double> x(n, 0.0);
    x[op.largest_diag_index()] = 1.0;
    std::vector<double> w(n);
    double residual = 0.0;
    for (int k = 1; k <= max_iter; ++k) {
        op.apply(x, w);
        const double lambda = vec::dot(x, w);
        double r2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = w[i] - lambda * x[i];
            r2 += d * d;
        }
        residual = std::sqrt(r2);
        if (residual <= tol * std::abs(lambda))
            return {lambda, std::move(x), k};
        const double wn = vec::norm(w);
        if (wn == 0.0)
            return {0.0, std::move(x), k};  // Sigma x = 0: exact null vector
        for (int i = 0; i < n; ++i) x[i] = w[i] / wn;
    }
    throw PowerMethodError("power_method: no convergence within max_iter", residual);
}

}  // namespace spca
