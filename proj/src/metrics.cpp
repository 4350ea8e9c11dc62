#include "spca/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "spca/vec.hpp"

namespace spca {

VarianceReport explained_variance(const SymmetricOperator& op, const UnitSparseVector& x,
                                  double power_tol, int power_max_iter) {
    const PowerMethodResult pm = power_method(op, power_tol, power_max_iter);
    return explained_variance(op, x, pm.lambda);
}

VarianceReport explained_variance(const SymmetricOperator& op, const UnitSparseVector& x,
                                  double lambda1) {
    const std::vector<double> w = op.matvec(x.span());
    const double sparse_value = vec::dot(x.span(), w);
    return {sparse_value, lambda1, sparse_value / lambda1};
}

double relative_error(double lambda_exact, double lambda_approx) {
    if (lambda_exact == 0.0)
        throw std::invalid_argument("relative_error: exact value is zero");
    return std::abs(lambda_exact - lambda_approx) / std::abs(lambda_exact);
}

double dks_density(const SymmetricOperator& adjacency, const UnitSparseVector& x, int k) {
    if (k < 1) throw std::invalid_argument("dks_density: k must be >= 1");
    if (x.nnz() > k) throw std::invalid_argument("dks_density: support exceeds k");
    const std::vector<double> w = adjacency.matvec(x.span());
    return vec::dot(x.span(), w);
}

double gershgorin_shift(const SymmetricOperator& op) {
    const int n = op.dim();
    // |a_ij| row sums via matvecs against signed probes would be costly in
    // general; adjacency and dense forms expose what we need directly.
    if (const auto* adj = dynamic_cast<const SparseAdjacencyOperator*>(&op))
        return 1.0 + adj->max_degree();
    if (const auto* dense = dynamic_cast<const DenseOperator*>(&op)) {
        double best = 0.0;
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += std::abs(dense->entry(i, j));
            best = std::max(best, s);
        }
        return 1.0 + best;
    }
    // Fallback: |a_ij| <= sqrt(a_ii a_jj) fails for indefinite matrices, so
    // probe columns one at a time.
    double best = 0.0;
    std::vector<double> e(n, 0.0), col(n);
    std::vector<double> rowsum(n, 0.0);
    for (int j = 0; j < n; ++j) {
        e[j] = 1.0;
        op.apply(e, col);
        e[j] = 0.0;
        for (int i = 0; i < n; ++i) rowsum[i] += std::abs(col[i]);
    }
    for (double s : rowsum) best = std::max(best, s);
    return 1.0 + best;
}

namespace {

// Borrowing view of base + cI; lets callers shift operators they do not own.
class BorrowedShift final : public SymmetricOperator {
public:
    BorrowedShift(const SymmetricOperator& base, double shift)
        : SymmetricOperator(base.dim()), base_(base), shift_(shift) {}

    void apply(std::span<const double> x, std::span<double> y) const override {
        base_.apply(x, y);
        for (std::size_t i = 0; i < x.size(); ++i) y[i] += shift_ * x[i];
    }
    double diag(int i) const override { return base_.diag(i) + shift_; }

private:
    const SymmetricOperator& base_;
    double shift_;
};

}  // namespace

double largest_eigenvalue_shifted(const SymmetricOperator& op, double tol, int max_iter) {
    const double c = gershgorin_shift(op);
    const PowerMethodResult pm = power_method(BorrowedShift(op, c), tol, max_iter);
    return pm.lambda - c;
}

DksDensityReport dks_density_report(const SymmetricOperator& adjacency,
                                    const UnitSparseVector& x, int k) {
    const double density = dks_density(adjacency, x, k);
    // The adjacency is indefinite in general (bipartite graphs have a
    // symmetric spectrum), so shift before iterating.
    const double lambda1 = largest_eigenvalue_shifted(adjacency);
    return {density, lambda1, density / lambda1};
}

namespace {

// (I - xx') Sigma (I - xx') realized as base matvecs plus rank-one
// corrections; Sigma x and x'Sigma x are cached at construction.
class DeflatedOperator final : public SymmetricOperator {
public:
    DeflatedOperator(OperatorPtr base, std::vector<double> x)
        : SymmetricOperator(base->dim()),
          base_(std::move(base)),
          x_(std::move(x)),
          sigma_x_(base_->matvec(x_)),
          x_sigma_x_(vec::dot(x_, sigma_x_)) {}

    void apply(std::span<const double> v, std::span<double> y) const override {
        const int n = dim();
        std::vector<double> w(v.begin(), v.end());
        const double xv = vec::dot(x_, v);
        vec::axpy(-xv, x_, w);   // w = (I - xx') v
        base_->apply(w, y);      // y = Sigma w
        const double xy = vec::dot(x_, y);
        for (int i = 0; i < n; ++i) y[i] -= xy * x_[i];  // (I - xx') y
    }

    double diag(int i) const override {
        return base_->diag(i) - 2.0 * x_[i] * sigma_x_[i] + x_[i] * x_[i] * x_sigma_x_;
    }

private:
    OperatorPtr base_;
    std::vector<double> x_;
    std::vector<double> sigma_x_;
    double x_sigma_x_;
};

}  // namespace

OperatorPtr deflate(OperatorPtr op, const UnitSparseVector& x) {
    if (!op) throw std::invalid_argument("deflate: null operator");
    if (op->dim() != x.dim()) throw std::invalid_argument("deflate: dimension mismatch");
    return std::make_shared<DeflatedOperator>(std::move(op), x.values());
}

}  // namespace spca
