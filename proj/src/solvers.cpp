#include "spca/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spca/vec.hpp"

namespace spca {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kAlphaFloor = 1e-12;
constexpr double kAlphaCeil = 1e12;
constexpr int kMaxBacktracks = 200;
}  // namespace

Objective::Objective(OperatorPtr op) : op_(std::move(op)) {
    if (!op_) throw std::invalid_argument("Objective: null operator");
}

double Objective::value(std::span<const double> x) const {
    const std::vector<double> w = op_->matvec(x);
    return -vec::dot(x, w);
}

std::vector<double> Objective::gradient(std::span<const double> x) const {
    std::vector<double> w = op_->matvec(x);
    vec::scale(-2.0, w);
    return w;
}

void Objective::value_and_gradient(std::span<const double> x, double& f,
                                   std::vector<double>& g) const {
    g = op_->matvec(x);
    f = -vec::dot(x, g);
    vec::scale(-2.0, g);
}

std::string to_string(Method m) {
    switch (m) {
        case Method::Gpu: return "gpu";
        case Method::Tpower: return "tpower";
        case Method::Gpbb: return "gpbb";
        case Method::MonotoneNewton: return "mnewton";
    }
    return "?";
}

std::string to_string(TerminationReason r) {
    switch (r) {
        case TerminationReason::Stagnation: return "STAGNATION";
        case TerminationReason::MaxIter: return "MAX_ITER";
        case TerminationReason::Degenerate: return "DEGENERATE";
    }
    return "?";
}

std::optional<Method> method_from_string(const std::string& name) {
    if (name == "gpu") return Method::Gpu;
    if (name == "tpower") return Method::Tpower;
    if (name == "gpbb") return Method::Gpbb;
    if (name == "mnewton") return Method::MonotoneNewton;
    return std::nullopt;
}

std::optional<BBVariant> bb_variant_from_string(const std::string& name) {
    if (name == "signed-rayleigh") return BBVariant::SignedRayleigh;
    if (name == "magnitude-negated") return BBVariant::MagnitudeNegated;
    return std::nullopt;
}

void SolverConfig::validate() const {
    if (step_size <= 0.0) throw std::invalid_argument("SolverConfig: step_size must be > 0");
    if (sigma <= 0.0 || sigma >= 1.0)
        throw std::invalid_argument("SolverConfig: sigma must lie in (0,1)");
    if (!(alpha_min <= alpha_max) || !(alpha_max < 0.0))
        throw std::invalid_argument("SolverConfig: need alpha_min <= alpha_max < 0");
    if (tol < 0.0) throw std::invalid_argument("SolverConfig: tol must be >= 0");
    if (stagnation_window < 1)
        throw std::invalid_argument("SolverConfig: stagnation_window must be >= 1");
    if (max_iter < 0) throw std::invalid_argument("SolverConfig: max_iter must be >= 0");
    if (shift < 0.0) throw std::invalid_argument("SolverConfig: shift must be >= 0");
}

namespace {

// z = x + step_scale * g, then +-projection; shared by all steps.
struct Candidate {
    std::vector<double> z;
};

StepResult project_or_keep(std::span<const double> z, const UnitSparseVector& x,
                           const SparseSphere& sphere, double sign) {
    std::vector<double> t = truncate(z, sphere.kappa);
    const double nt = vec::norm(t);
    if (nt == 0.0) return {x, true};
    for (double& v : t) v *= sign / nt;
    return {UnitSparseVector(std::move(t), sphere), false};
}

StepResult gpu_step_from_gradient(const UnitSparseVector& x, std::span<const double> g,
                                  double s, const SparseSphere& sphere) {
    std::vector<double> z(x.values());
    vec::axpy(-s, g, z);
    return project_or_keep(z, x, sphere, 1.0);
}

StepResult tpower_step_from_gradient(const UnitSparseVector& x, std::span<const double> g,
                                     const SparseSphere& sphere) {
    std::vector<double> z(g.begin(), g.end());
    vec::scale(-1.0, z);
    return project_or_keep(z, x, sphere, 1.0);
}

StepResult gpbb_step_from_gradient(const UnitSparseVector& x, std::span<const double> g,
                                   double alpha, const SparseSphere& sphere) {
    std::vector<double> z(x.values());
    vec::axpy(-1.0 / alpha, g, z);
    return project_or_keep(z, x, sphere, alpha < 0.0 ? -1.0 : 1.0);
}

double gap_from_gradient(const UnitSparseVector& x, std::span<const double> g, double s,
                         const SparseSphere& sphere) {
    std::vector<double> z(x.values());
    vec::axpy(-s, g, z);
    std::vector<double> t = truncate(z, sphere.kappa);
    const double nt = vec::norm(t);
    if (nt == 0.0) return kNaN;
    double gap = 0.0;
    for (int i = 0; i < x.dim(); ++i) gap -= g[i] * (t[i] / nt - x[i]);
    return gap;
}

double clamp_alpha(double alpha) {
    if (alpha == 0.0) return -kAlphaFloor;
    const double mag = std::clamp(std::abs(alpha), kAlphaFloor, kAlphaCeil);
    return std::copysign(mag, alpha);
}

UnitSparseVector initial_iterate(const SymmetricOperator& op, const SparseSphere& sphere,
                                 const SolverConfig& cfg) {
    if (cfg.start) {
        if (static_cast<int>(cfg.start->size()) != sphere.n)
            throw std::invalid_argument("solve: start vector has wrong dimension");
        return project(*cfg.start, sphere);
    }
    std::vector<double> e(sphere.n, 0.0);
    e[op.largest_diag_index()] = 1.0;
    return {std::move(e), sphere};
}

SolveReport run_solver(const Objective& base, const SparseSphere& sphere,
                       const SolverConfig& cfg) {
    cfg.validate();
    OperatorPtr op_eff = cfg.shift > 0.0
                             ? std::make_shared<ShiftedOperator>(base.op(), cfg.shift)
                             : base.op();
    const Objective obj(op_eff);
    // For unit x, -x'(Sigma + cI)x = -x'Sigma x - c: report f + c.
    const double f_off = cfg.shift;

    UnitSparseVector x = initial_iterate(*op_eff, sphere, cfg);
    double f;
    std::vector<double> g;
    obj.value_and_gradient(x.span(), f, g);

    SolveReport rep{x, 0, {}, TerminationReason::MaxIter, 1, 1, {}};
    rep.trace.reserve(std::min(cfg.max_iter, 1 << 20) + 1);

    auto push_row = [&](int k, double alpha_col) {
        rep.trace.push_back({k, f + f_off, gap_from_gradient(x, g, cfg.step_size, sphere),
                             alpha_col, x.support_fingerprint()});
    };

    BBState bb;
    int streak = 0;
    int k = 0;
    const bool is_monotone = cfg.method == Method::MonotoneNewton;

    while (k < cfg.max_iter) {
        double alpha_col = kNaN;
        StepResult next{x, false};
        bool have_next_eval = false;
        double f_next = 0.0;
        std::vector<double> g_next;
        int backtracks = 0;

        switch (cfg.method) {
            case Method::Gpu:
                alpha_col = cfg.step_size;
                next = gpu_step_from_gradient(x, g, cfg.step_size, sphere);
                break;
            case Method::Tpower:
                next = tpower_step_from_gradient(x, g, sphere);
                break;
            case Method::Gpbb:
            case Method::MonotoneNewton: {
                if (k == 0) {
                    // BB needs two gradients: bootstrap with one unit GPU step.
                    alpha_col = 1.0;
                    next = gpu_step_from_gradient(x, g, 1.0, sphere);
                    break;
                }
                if (x.values() == bb.x_prev) {
                    push_row(k, kNaN);
                    rep.reason = TerminationReason::Stagnation;
                    rep.iterations = k;
                    rep.x_final = x;
                    return rep;
                }
                double alpha = bb_alpha(bb, x.span(), g, cfg.bb_variant);
                if (!is_monotone) {
                    alpha_col = alpha;
                    next = gpbb_step_from_gradient(x, g, alpha, sphere);
                    break;
                }
                // Monotone: clamp the BB value into [alpha_min, alpha_max]
                // and backtrack alpha_k = sigma^j beta_k.
                alpha = std::clamp(alpha, cfg.alpha_min, cfg.alpha_max);
                bool accepted = false;
                for (int j = 0; j <= kMaxBacktracks; ++j) {
                    StepResult cand = gpbb_step_from_gradient(x, g, alpha, sphere);
                    if (cand.degenerate) {
                        push_row(k, alpha);
                        rep.reason = TerminationReason::Stagnation;
                        rep.iterations = k;
                        rep.x_final = x;
                        return rep;
                    }
                    double f_cand;
                    std::vector<double> g_cand;
                    obj.value_and_gradient(cand.x.span(), f_cand, g_cand);
                    ++rep.objective_evaluations;
                    ++rep.matvecs;
                    const double dd = vec::norm_diff(cand.x.span(), x.span());
                    if (f_cand <= f + alpha * dd * dd) {
                        accepted = true;
                        backtracks = j;
                        alpha_col = alpha;
                        next = std::move(cand);
                        f_next = f_cand;
                        g_next = std::move(g_cand);
                        have_next_eval = true;
                        break;
                    }
                    alpha *= cfg.sigma;
                }
                if (!accepted)
                    throw BacktrackingError(
                        "monotone newton: no acceptable alpha within 200 backtracks "
                        "(objective not concave enough on the feasible set)");
                break;
            }
        }

        push_row(k, alpha_col);
        if (is_monotone) rep.backtracks.push_back(backtracks);

        if (next.degenerate) {
            rep.reason = TerminationReason::Degenerate;
            rep.iterations = k;
            rep.x_final = x;
            return rep;
        }

        if (!have_next_eval) {
            obj.value_and_gradient(next.x.span(), f_next, g_next);
            ++rep.objective_evaluations;
            ++rep.matvecs;
        }

        const bool stable = next.x.same_support(x) &&
                            std::abs((f + f_off) - (f_next + f_off)) <=
                                cfg.tol * std::max(1.0, std::abs(f + f_off));
        streak = stable ? streak + 1 : 0;

        bb.x_prev = x.values();
        bb.g_prev = std::move(g);
        x = std::move(next.x);
        f = f_next;
        g = std::move(g_next);
        ++k;

        if (streak >= cfg.stagnation_window) {
            rep.reason = TerminationReason::Stagnation;
            break;
        }
    }

    push_row(k, kNaN);
    rep.iterations = k;
    rep.x_final = x;
    return rep;
}

}  // namespace

StepResult gpu_step(const Objective& obj, const UnitSparseVector& x, double s,
                    const SparseSphere& sphere) {
    if (s <= 0.0) throw std::invalid_argument("gpu_step: step size must be > 0");
    return gpu_step_from_gradient(x, obj.gradient(x.span()), s, sphere);
}

StepResult tpower_step(const Objective& obj, const UnitSparseVector& x,
                       const SparseSphere& sphere) {
    return tpower_step_from_gradient(x, obj.gradient(x.span()), sphere);
}

double bb_alpha(const BBState& state, std::span<const double> x,
                std::span<const double> g, BBVariant variant) {
    if (state.x_prev.size() != x.size() || state.g_prev.size() != g.size())
        throw std::invalid_argument("bb_alpha: BBState not populated");
    double ss = 0.0, sy = 0.0, yy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double si = x[i] - state.x_prev[i];
        const double yi = g[i] - state.g_prev[i];
        ss += si * si;
        sy += si * yi;
        yy += yi * yi;
    }
    if (ss == 0.0) throw BBStagnationError("bb_alpha: iterate did not move");
    const double alpha =
        variant == BBVariant::SignedRayleigh ? sy / ss : -(yy / ss);
    return clamp_alpha(alpha);
}

StepResult gpbb_step(const Objective& obj, const UnitSparseVector& x,
                     const BBState& state, const SparseSphere& sphere) {
    return gpbb_step_from_gradient(x, obj.gradient(x.span()), state.alpha, sphere);
}

double stationarity_gap(const Objective& obj, const UnitSparseVector& x, double s,
                        const SparseSphere& sphere) {
    const std::vector<double> g = obj.gradient(x.span());
    const double gap = gap_from_gradient(x, g, s, sphere);
    if (std::isnan(gap))
        throw DegenerateProjectionError("stationarity_gap: degenerate projection");
    return gap;
}

SolveReport monotone_newton_solve(const Objective& obj, const SparseSphere& sphere,
                                  const SolverConfig& config) {
    SolverConfig cfg = config;
    cfg.method = Method::MonotoneNewton;
    return run_solver(obj, sphere, cfg);
}

SolveReport solve(const Objective& obj, const SparseSphere& sphere,
                  const SolverConfig& config) {
    return run_solver(obj, sphere, config);
}

}  // namespace spca
