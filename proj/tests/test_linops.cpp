#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "spca/linops.hpp"
#include "spca/rng.hpp"
#include "spca/vec.hpp"
#include "support.hpp"

using namespace spca;

namespace {

OperatorPtr dense_diag(std::vector<double> d) {
    const int n = static_cast<int>(d.size());
    std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i) * n + i] = d[i];
    return std::make_shared<DenseOperator>(n, std::move(a));
}

OperatorPtr complete_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return std::make_shared<SparseAdjacencyOperator>(n, edges);
}

std::vector<OperatorPtr> probe_variants() {
    std::vector<OperatorPtr> ops;
    rng::Stream s(7);
    const int n = 12;
    std::vector<double> a(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double v = s.next_symmetric();
            a[i * n + j] = v;
            a[j * n + i] = v;
        }
    ops.push_back(std::make_shared<DenseOperator>(n, a));
    ops.push_back(testsup::random_gram(11, 8, n));
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (s.next_uniform() < 0.4) edges.emplace_back(i, j);
    ops.push_back(std::make_shared<SparseAdjacencyOperator>(n, edges));
    ops.push_back(std::make_shared<ShiftedOperator>(ops.front(), 2.5));
    return ops;
}

}  // namespace

TEST_CASE("matvec examples") {
    SUBCASE("dense identity") {
        std::vector<double> a{1, 0, 0, 0, 1, 0, 0, 0, 1};
        DenseOperator op(3, a);
        const std::vector<double> v{1, 2, 3};
        const auto y = op.matvec(v);
        CHECK(y == v);
    }
    SUBCASE("gram A = [[1,0],[0,2]] against the hand-computed A'A") {
        GramOperator op(2, 2, {1, 0, 0, 2});
        const auto y = op.matvec(std::vector<double>{1, 1});
        CHECK(y[0] == doctest::Approx(1.0));
        CHECK(y[1] == doctest::Approx(4.0));
    }
    SUBCASE("shifted zeros is a pure shift") {
        auto zeros = std::make_shared<DenseOperator>(2, std::vector<double>{0, 0, 0, 0});
        ShiftedOperator op(zeros, 2.0);
        const auto y = op.matvec(std::vector<double>{1, -1});
        CHECK(y[0] == 2.0);
        CHECK(y[1] == -2.0);
    }
    SUBCASE("dimension mismatch throws") {
        DenseOperator op(2, std::vector<double>{1, 0, 0, 1});
        CHECK_THROWS_AS((void)op.matvec(std::vector<double>{1, 2, 3}),
                        std::invalid_argument);
    }
}

TEST_CASE("largest_diag_index") {
    CHECK(dense_diag({1, 5, 3})->largest_diag_index() == 1);
    CHECK(GramOperator(2, 2, {3, 0, 0, 1}).largest_diag_index() == 0);  // col norms 9, 1
    CHECK(dense_diag({2, 2})->largest_diag_index() == 0);               // tie -> lowest
}

TEST_CASE("power method examples") {
    SUBCASE("diagonal") {
        const auto pm = power_method(*dense_diag({3, 1}), 1e-10, 1000);
        CHECK(pm.lambda == doctest::Approx(3.0).epsilon(1e-10));
        CHECK(std::abs(pm.eigenvector[0]) == doctest::Approx(1.0).epsilon(1e-8));
    }
    SUBCASE("complete graph K5 has lambda1 = 4") {
        const auto op = complete_graph(5);
        const auto pm = power_method(*op, 1e-10, 10000);
        CHECK(pm.lambda == doctest::Approx(4.0).epsilon(1e-9));
        CHECK(pm.lambda == doctest::Approx(testsup::max_eigenvalue(*op)).epsilon(1e-9));
    }
    SUBCASE("degenerate dominant eigenvalue accepted by residual contract") {
        const auto pm = power_method(*dense_diag({2, 2}), 1e-12, 100);
        CHECK(pm.lambda == doctest::Approx(2.0));
        // residual contract: ||Sigma y - lambda y|| <= tol |lambda|
        const auto op = dense_diag({2, 2});
        const auto w = op->matvec(pm.eigenvector);
        double r = 0;
        for (int i = 0; i < 2; ++i) r += std::pow(w[i] - pm.lambda * pm.eigenvector[i], 2);
        CHECK(std::sqrt(r) <= 1e-12 * 2.0);
    }
    SUBCASE("non-convergence carries the last residual") {
        // Symmetric +-1 spectrum: residual cannot fall for the alternating
        // iterate, so max_iter trips.
        std::vector<std::pair<int, int>> edge{{0, 1}};
        SparseAdjacencyOperator p2(2, edge);
        CHECK_THROWS_AS((void)power_method(p2, 1e-12, 3), PowerMethodError);
        try {
            (void)power_method(p2, 1e-12, 3);
        } catch (const PowerMethodError& e) {
            CHECK(e.last_residual > 0.0);
        }
    }
}

TEST_CASE("symmetry and linearity probes across variants") {
    for (const auto& op : probe_variants()) {
        const int n = op->dim();
        rng::Stream s(1234);
        for (int rep = 0; rep < 100; ++rep) {
            const auto u = testsup::random_vector(s, n);
            const auto v = testsup::random_vector(s, n);
            const auto opu = op->matvec(u);
            const auto opv = op->matvec(v);
            const double lhs = vec::dot(opu, v), rhs = vec::dot(u, opv);
            const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
            CHECK(std::abs(lhs - rhs) <= 1e-10 * scale);

            const double a = s.next_symmetric(), b = s.next_symmetric();
            std::vector<double> lin(n);
            for (int i = 0; i < n; ++i) lin[i] = a * u[i] + b * v[i];
            const auto oplin = op->matvec(lin);
            double err = 0.0, mag = 0.0;
            for (int i = 0; i < n; ++i) {
                const double want = a * opu[i] + b * opv[i];
                err = std::max(err, std::abs(oplin[i] - want));
                mag = std::max(mag, std::abs(want));
            }
            CHECK(err <= 1e-12 * std::max(1.0, mag));
        }
    }
}

TEST_CASE("gram matvec agrees with the materialized A'A") {
    rng::Stream s(99);
    for (int rep = 0; rep < 5; ++rep) {
        const int m = 3 + static_cast<int>(s.next_uniform() * 47);
        const int n = 3 + static_cast<int>(s.next_uniform() * 47);
        const auto op = testsup::random_gram(1000 + rep, m, n);
        const Eigen::MatrixXd dense = testsup::materialize(*op);
        const auto x = testsup::random_vector(s, n);
        const auto y = op->matvec(x);
        Eigen::VectorXd xe(n);
        for (int i = 0; i < n; ++i) xe(i) = x[i];
        const Eigen::VectorXd ye = dense * xe;
        for (int i = 0; i < n; ++i)
            CHECK(std::abs(y[i] - ye(i)) <= 1e-10 * std::max(1.0, std::abs(ye(i))));
    }
}

TEST_CASE("power method matches the dense eigensolve oracle") {
    for (int rep = 0; rep < 6; ++rep) {
        const int n = 5 + 4 * rep;  // up to 25
        const auto op = testsup::random_gram(500 + rep, n + 3, n);
        const auto pm = power_method(*op, 1e-11, 200000);
        const double exact = testsup::max_eigenvalue(*op);
        CHECK(std::abs(pm.lambda - exact) <= 1e-8 * std::abs(exact));
    }
}

TEST_CASE("objective ordering is shift-invariant on the unit sphere") {
    rng::Stream s(5);
    const auto base = testsup::random_gram(77, 10, 14);
    const auto shifted = std::make_shared<ShiftedOperator>(base, 3.75);
    for (int rep = 0; rep < 50; ++rep) {
        auto x = testsup::random_vector(s, 14);
        auto y = testsup::random_vector(s, 14);
        const double nx = vec::norm(x), ny = vec::norm(y);
        for (auto& v : x) v /= nx;
        for (auto& v : y) v /= ny;
        const double dx = vec::dot(x, base->matvec(x)) - vec::dot(y, base->matvec(y));
        const double ds =
            vec::dot(x, shifted->matvec(x)) - vec::dot(y, shifted->matvec(y));
        CHECK(std::abs(dx - ds) <= 1e-10);
    }
}
