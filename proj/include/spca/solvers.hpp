#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spca/linops.hpp"
#include "spca/sphere.hpp"

namespace spca {

// f(x) = -x' Sigma x over the sparse sphere, so maximizing the Rayleigh
// quotient becomes concave minimization when Sigma is PSD. The gradient is
// g(x) = -2 Sigma x.
class Objective {
public:
    explicit Objective(OperatorPtr op);

    const OperatorPtr& op() const noexcept { return op_; }
    int dim() const noexcept { return op_->dim(); }

    double value(std::span<const double> x) const;
    std::vector<double> gradient(std::span<const double> x) const;

    // One matvec for both; the per-iteration cost of every solver.
    void value_and_gradient(std::span<const double> x, double& f,
                            std::vector<double>& g) const;

private:
    OperatorPtr op_;
};

enum class Method { Gpu, Tpower, Gpbb, MonotoneNewton };
enum class BBVariant { SignedRayleigh, MagnitudeNegated };
enum class TerminationReason { Stagnation, MaxIter, Degenerate };

std::string to_string(Method m);
std::string to_string(TerminationReason r);
std::optional<Method> method_from_string(const std::string& name);
std::optional<BBVariant> bb_variant_from_string(const std::string& name);

struct SolverConfig {
    Method method = Method::Gpu;
    double step_size = 1.0;  // fixed s for Gpu
    BBVariant bb_variant = BBVariant::SignedRayleigh;
    double sigma = 0.25;          // backtracking factor, in (0,1)
    double alpha_min = -1e12;     // [alpha_min, alpha_max] subset of (-inf, 0)
    double alpha_max = -1e-12;
    double tol = 1e-12;           // relative f-stagnation tolerance
    int stagnation_window = 5;    // consecutive stable iterations required
    int max_iter = 1000;
    double shift = 0.0;           // c >= 0 applied to Sigma before iterating
    std::optional<std::vector<double>> start;  // overrides the e_i default

    void validate() const;
};

// BB scalar Hessian surrogate state.
struct BBState {
    std::vector<double> x_prev;
    std::vector<double> g_prev;
    double alpha = -1.0;
};

struct BBStagnationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BacktrackingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TraceRow {
    int k;
    double f;            // objective, reported unshifted
    double gap;          // stationarity gap at x_k
    double alpha;        // step scalar used at x_k (s, or alpha_k); NaN on last row
    std::uint64_t support;  // support fingerprint
};

struct SolveReport {
    UnitSparseVector x_final;
    int iterations = 0;
    std::vector<TraceRow> trace;  // length iterations + 1
    TerminationReason reason = TerminationReason::MaxIter;
    long objective_evaluations = 0;
    long matvecs = 0;
    std::vector<int> backtracks;  // per-iteration j (monotone Newton only)
};

struct StepResult {
    UnitSparseVector x;
    bool degenerate;  // truncation vanished; x is the unchanged input
};

// x+ = P_Omega(x - s g(x)) = T_kappa(x + 2 s Sigma x)/||.||.
StepResult gpu_step(const Objective& obj, const UnitSparseVector& x, double s,
                    const SparseSphere& sphere);

// x+ = T_kappa(Sigma x)/||T_kappa(Sigma x)|| (equals T_kappa(-g)/||.|| by
// positive-scale invariance of the truncation).
StepResult tpower_step(const Objective& obj, const UnitSparseVector& x,
                       const SparseSphere& sphere);

// Scalar BB Hessian approximation from the latest iterate/gradient pair.
// SignedRayleigh: (s'y)/(s's); MagnitudeNegated: -||y||^2/||s||^2. The result
// is clamped to magnitude range [1e-12, 1e12]; an exact zero becomes -1e-12.
// Throws BBStagnationError when x == x_prev.
double bb_alpha(const BBState& state, std::span<const double> x,
                std::span<const double> g, BBVariant variant);

// z = x - g/alpha; anti-project when alpha < 0, project when alpha > 0.
StepResult gpbb_step(const Objective& obj, const UnitSparseVector& x,
                     const BBState& state, const SparseSphere& sphere);

// -grad f(x) (y - x) with y = P_Omega(x - s g(x)); nonnegative, and zero
// certifies the first-order stationarity condition at x.
double stationarity_gap(const Objective& obj, const UnitSparseVector& x, double s,
                        const SparseSphere& sphere);

// Backtracked anti-projection scheme: alpha_k = sigma^j beta_k with beta_k
// the BB value clamped into [alpha_min, alpha_max], j the smallest integer
// whose candidate passes f(x+) <= f(x) + alpha_k ||x+ - x||^2. Objective
// values are nonincreasing by construction.
SolveReport monotone_newton_solve(const Objective& obj, const SparseSphere& sphere,
                                  const SolverConfig& config);

// Driver for all four methods with trace capture, stagnation termination and
// optional spectral shift.
SolveReport solve(const Objective& obj, const SparseSphere& sphere,
                  const SolverConfig& config);

}  // namespace spca
