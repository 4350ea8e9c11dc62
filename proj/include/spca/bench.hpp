#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spca/io.hpp"
#include "spca/metrics.hpp"
#include "spca/solvers.hpp"

namespace spca::bench {

// Parsed command line for one subcommand run. Optional fields override the
// per-subcommand solver defaults.
struct ExperimentSpec {
    std::string dataset = "pitprops";  // pitprops|random|identity|mtx:<p>|csv:<p>
    std::vector<Method> methods;
    std::vector<int> kappas;
    std::vector<int> ms = {250};
    int n = 500;
    int k = 1;  // dks budget
    std::vector<std::uint64_t> seeds = {1};
    std::string out;
    int threads = 0;  // 0: hardware concurrency

    std::optional<int> max_iter;
    std::optional<double> tol;
    std::optional<double> step_size;
    std::optional<double> sigma;
    std::optional<double> alpha_min;
    std::optional<double> alpha_max;
    std::optional<double> shift;
    std::optional<BBVariant> bb_variant;
};

// Loads the dataset named by the spec; `seed` is used by the random dataset
// only (instances are keyed by rng::derive(seed, m) so sweeps are
// thread-count independent).
Dataset load_dataset(const ExperimentSpec& spec, std::uint64_t seed);

SolverConfig make_config(const ExperimentSpec& spec, Method method, int max_iter_default,
                         double tol_default);

// Single run: solve + explained variance, JSON report + CSV trace.
struct SolveOutcome {
    SolveReport report;
    VarianceReport variance;
};
SolveOutcome run_single(const ExperimentSpec& spec);
void cmd_solve(const ExperimentSpec& spec);

// Mean explained variance per (method, kappa, m) cell across seeds.
struct SweepCell {
    std::string method;
    int kappa;
    int m;
    double mean_ev;
    int seeds_ok;
    int seeds_failed;
};
std::vector<SweepCell> run_sweep(const ExperimentSpec& spec);
void cmd_sweep(const ExperimentSpec& spec);

// Relative eigenvalue error per iteration at kappa = n.
struct EigstudyRow {
    std::uint64_t seed;
    std::string method;
    int k;
    double relerr;
};
struct EigstudySummary {
    std::uint64_t seed;
    std::string method;
    int iters_to_tol;  // -1 when the tolerance was never reached
    long objective_evaluations;
};
struct EigstudyResult {
    std::vector<EigstudyRow> rows;
    std::vector<EigstudySummary> summaries;
    double tol;
};
EigstudyResult run_eigstudy(const ExperimentSpec& spec);
void cmd_eigstudy(const ExperimentSpec& spec);

// Densest-k-subgraph relaxation on a graph dataset.
struct DksOutcome {
    std::string method;
    int k;
    std::vector<int> support;   // vertices, 0-based, sorted
    double density;             // pi'A pi / k with pi the 0/1 support indicator
    double relaxed_value;       // x'Ax at the solver iterate
    double lambda1;
    double ratio;               // density / lambda1
    int iterations;
};
DksOutcome run_dks(const Dataset& graph, Method method, int k, const ExperimentSpec& spec);
void cmd_dks(const ExperimentSpec& spec);

}  // namespace spca::bench
