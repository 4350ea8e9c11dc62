#pragma once

#include "spca/linops.hpp"
#include "spca/sphere.hpp"

namespace spca {

struct VarianceReport {
    double sparse_value;  // x' Sigma x
    double dense_value;   // y' Sigma y = lambda_1
    double ratio;         // proportion of explained variance
};

// Ratio x'Sigma x / y'Sigma y with y the first principal component obtained
// by the power method.
VarianceReport explained_variance(const SymmetricOperator& op, const UnitSparseVector& x,
                                  double power_tol = 1e-12, int power_max_iter = 200000);

// Same report against a known dominant eigenvalue (avoids re-running the
// power method per call).
VarianceReport explained_variance(const SymmetricOperator& op, const UnitSparseVector& x,
                                  double lambda1);

// |exact - approx| / |exact|.
double relative_error(double lambda_exact, double lambda_approx);

// x' A x for a feasible x with at most k nonzeros (one matvec).
double dks_density(const SymmetricOperator& adjacency, const UnitSparseVector& x, int k);

struct DksDensityReport {
    double density;
    double lambda1;  // largest eigenvalue of the adjacency
    double ratio;    // density / lambda1
};

DksDensityReport dks_density_report(const SymmetricOperator& adjacency,
                                    const UnitSparseVector& x, int k);

// Largest (algebraic) eigenvalue of a possibly indefinite symmetric operator:
// power method on op + cI with c = 1 + max_i sum_j |a_ij| (Gershgorin), then
// subtract c.
double largest_eigenvalue_shifted(const SymmetricOperator& op, double tol = 1e-12,
                                  int max_iter = 200000);

// Gershgorin-based positive-definiteness shift 1 + max absolute row sum.
double gershgorin_shift(const SymmetricOperator& op);

// Projection deflation (I - xx')Sigma(I - xx'); annihilates the extracted
// component, stays symmetric and PSD when Sigma is PSD.
OperatorPtr deflate(OperatorPtr op, const UnitSparseVector& x);

}  // namespace spca
