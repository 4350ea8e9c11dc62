#pragma once

// Shared oracles for the test suites. Everything here goes through Eigen's
// dense eigensolver or plain loops, independent of the library's own
// iteration paths.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <vector>

#include "spca/linops.hpp"
#include "spca/rng.hpp"

namespace testsup {

// Densify any operator by probing with basis vectors.
inline Eigen::MatrixXd materialize(const spca::SymmetricOperator& op) {
    const int n = op.dim();
    Eigen::MatrixXd m(n, n);
    std::vector<double> e(n, 0.0), col(n);
    for (int j = 0; j < n; ++j) {
        e[j] = 1.0;
        op.apply(e, col);
        e[j] = 0.0;
        for (int i = 0; i < n; ++i) m(i, j) = col[i];
    }
    return m;
}

inline Eigen::VectorXd eigenvalues(const spca::SymmetricOperator& op) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(materialize(op));
    return es.eigenvalues();  // ascending
}

inline double max_eigenvalue(const spca::SymmetricOperator& op) {
    const Eigen::VectorXd ev = eigenvalues(op);
    return ev(ev.size() - 1);
}

inline double min_eigenvalue(const spca::SymmetricOperator& op) {
    return eigenvalues(op)(0);
}

inline std::vector<double> random_vector(spca::rng::Stream& stream, int n,
                                         double scale = 1.0) {
    std::vector<double> v(n);
    for (double& x : v) x = scale * stream.next_symmetric();
    return v;
}

// Random PSD operator Sigma = A'A with m rows.
inline std::shared_ptr<spca::GramOperator> random_gram(std::uint64_t seed, int m, int n) {
    std::vector<double> a(static_cast<std::size_t>(m) * n);
    for (std::size_t t = 0; t < a.size(); ++t) a[t] = spca::rng::gaussian(seed, t);
    return std::make_shared<spca::GramOperator>(m, n, std::move(a));
}

}  // namespace testsup
