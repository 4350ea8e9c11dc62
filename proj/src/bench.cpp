#include "spca/bench.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include "spca/rng.hpp"
#include "spca/vec.hpp"

namespace spca::bench {

namespace {

std::string trace_path_for(const std::string& out) {
    const auto dot = out.find_last_of('.');
    const auto slash = out.find_last_of("/\\");
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return out + ".csv";
    return out.substr(0, dot) + ".csv";
}

int effective_threads(const ExperimentSpec& spec) {
    if (spec.threads > 0) return spec.threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, count) across a small pool; results must be
// written to disjoint slots so the assembly stays deterministic.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

bool verbose() {
    const char* v = std::getenv("SPCA_VERBOSE");
    return v != nullptr && std::string(v) != "0";
}

}  // namespace

Dataset load_dataset(const ExperimentSpec& spec, std::uint64_t seed) {
    const std::string& d = spec.dataset;
    if (d == "pitprops") return pit_props();
    if (d == "identity") return identity_dataset(spec.n);
    if (d == "random") {
        const int m = spec.ms.empty() ? 250 : spec.ms.front();
        return random_gaussian(m, spec.n, rng::derive(seed, static_cast<std::uint64_t>(m)));
    }
    if (d.rfind("mtx:", 0) == 0) return read_matrix_market(d.substr(4));
    if (d.rfind("csv:", 0) == 0) return read_dense_matrix(d.substr(4));
    throw std::invalid_argument("unknown dataset '" + d + "'");
}

SolverConfig make_config(const ExperimentSpec& spec, Method method, int max_iter_default,
                         double tol_default) {
    SolverConfig cfg;
    cfg.method = method;
    cfg.max_iter = spec.max_iter.value_or(max_iter_default);
    cfg.tol = spec.tol.value_or(tol_default);
    if (spec.step_size) cfg.step_size = *spec.step_size;
    if (spec.sigma) cfg.sigma = *spec.sigma;
    if (spec.alpha_min) cfg.alpha_min = *spec.alpha_min;
    if (spec.alpha_max) cfg.alpha_max = *spec.alpha_max;
    if (spec.shift) cfg.shift = *spec.shift;
    if (spec.bb_variant) cfg.bb_variant = *spec.bb_variant;
    cfg.validate();
    return cfg;
}

SolveOutcome run_single(const ExperimentSpec& spec) {
    if (spec.methods.empty()) throw std::invalid_argument("no method selected");
    if (spec.kappas.empty()) throw std::invalid_argument("no kappa given");
    const Dataset ds = load_dataset(spec, spec.seeds.front());
    const SparseSphere sphere(ds.op->dim(), spec.kappas.front());
    const SolverConfig cfg = make_config(spec, spec.methods.front(), 6000, 1e-12);
    const Objective obj(ds.op);
    SolveReport report = solve(obj, sphere, cfg);
    const bool graph = dynamic_cast<const SparseAdjacencyOperator*>(ds.op.get()) != nullptr;
    const double lambda1 = graph ? largest_eigenvalue_shifted(*ds.op)
                                 : power_method(*ds.op, 1e-12, 200000).lambda;
    const VarianceReport variance = explained_variance(*ds.op, report.x_final, lambda1);
    return {std::move(report), variance};
}

void cmd_solve(const ExperimentSpec& spec) {
    const SolveOutcome outcome = run_single(spec);
    const std::string out = spec.out.empty() ? "report.json" : spec.out;
    write_json(out, report_to_json(to_string(spec.methods.front()), spec.kappas.front(),
                                   outcome.report, outcome.variance.ratio, nullptr));
    write_trace_csv(trace_path_for(out), outcome.report.trace);
    std::cout << "method=" << to_string(spec.methods.front())
              << " kappa=" << spec.kappas.front()
              << " iterations=" << outcome.report.iterations
              << " f=" << outcome.report.trace.back().f
              << " explained_variance=" << outcome.variance.ratio << "\n";
}

std::vector<SweepCell> run_sweep(const ExperimentSpec& spec) {
    if (spec.methods.empty()) throw std::invalid_argument("no method selected");
    if (spec.kappas.empty()) throw std::invalid_argument("no kappa list given");
    if (spec.seeds.empty()) throw std::invalid_argument("no seeds given");
    if (spec.dataset != "random")
        throw std::invalid_argument("sweep supports the random dataset only");

    struct Instance {
        std::uint64_t seed;
        int m;
    };
    std::vector<Instance> instances;
    for (std::uint64_t s : spec.seeds)
        for (int m : spec.ms) instances.push_back({s, m});

    const int n_methods = static_cast<int>(spec.methods.size());
    const int n_kappa = static_cast<int>(spec.kappas.size());
    // ev[instance][method][kappa]; NaN marks a failed cell.
    std::vector<double> ev(instances.size() * n_methods * n_kappa,
                           std::numeric_limits<double>::quiet_NaN());

    parallel_for(static_cast<int>(instances.size()), effective_threads(spec), [&](int t) {
        const auto [seed, m] = instances[t];
        ExperimentSpec inst_spec = spec;
        inst_spec.ms = {m};
        const Dataset ds = load_dataset(inst_spec, seed);
        double lambda1;
        try {
            lambda1 = power_method(*ds.op, 1e-10, 200000).lambda;
        } catch (const std::exception& e) {
            if (verbose()) std::cerr << "sweep: seed " << seed << " m " << m
                                     << " power method failed: " << e.what() << "\n";
            return;  // all cells of this instance stay failed
        }
        const Objective obj(ds.op);
        for (int mi = 0; mi < n_methods; ++mi) {
            const Method method = spec.methods[mi];
            // Budgets follow the source experiments: 6000 iterations for the
            // gradient-projection family, 200 for the BB family.
            const bool bb = method == Method::Gpbb || method == Method::MonotoneNewton;
            const SolverConfig cfg = make_config(spec, method, bb ? 200 : 6000, 1e-12);
            for (int ki = 0; ki < n_kappa; ++ki) {
                const int kappa = spec.kappas[ki];
                try {
                    const SparseSphere sphere(ds.op->dim(), kappa);
                    const SolveReport rep = solve(obj, sphere, cfg);
                    const VarianceReport vr = explained_variance(*ds.op, rep.x_final, lambda1);
                    ev[(static_cast<std::size_t>(t) * n_methods + mi) * n_kappa + ki] =
                        vr.ratio;
                } catch (const std::exception& e) {
                    if (verbose())
                        std::cerr << "sweep cell failed (seed " << seed << ", m " << m
                                  << ", " << to_string(method) << ", kappa " << kappa
                                  << "): " << e.what() << "\n";
                }
            }
        }
    });

    std::vector<SweepCell> cells;
    for (int mi = 0; mi < n_methods; ++mi) {
        for (int ki = 0; ki < n_kappa; ++ki) {
            for (int m_idx = 0; m_idx < static_cast<int>(spec.ms.size()); ++m_idx) {
                double sum = 0.0;
                int ok = 0, failed = 0;
                for (std::size_t t = 0; t < instances.size(); ++t) {
                    if (instances[t].m != spec.ms[m_idx]) continue;
                    const double v =
                        ev[(t * n_methods + mi) * n_kappa + ki];
                    if (std::isnan(v)) {
                        ++failed;
                    } else {
                        sum += v;
                        ++ok;
                    }
                }
                cells.push_back({to_string(spec.methods[mi]), spec.kappas[ki],
                                 spec.ms[m_idx], ok > 0 ? sum / ok : 0.0, ok, failed});
            }
        }
    }
    return cells;
}

void cmd_sweep(const ExperimentSpec& spec) {
    const std::vector<SweepCell> cells = run_sweep(spec);
    const std::string out = spec.out.empty() ? "sweep.csv" : spec.out;
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << "method,kappa,m,mean_explained_variance,seeds_ok,seeds_failed\n";
    char buf[160];
    for (const SweepCell& c : cells) {
        std::snprintf(buf, sizeof(buf), "%s,%d,%d,%.12g,%d,%d\n", c.method.c_str(),
                      c.kappa, c.m, c.mean_ev, c.seeds_ok, c.seeds_failed);
        f << buf;
    }
    std::cout << "wrote " << cells.size() << " sweep cells to " << out << "\n";
}

EigstudyResult run_eigstudy(const ExperimentSpec& spec) {
    if (spec.methods.empty()) throw std::invalid_argument("no method selected");
    if (spec.dataset != "random")
        throw std::invalid_argument("eigstudy supports the random dataset only");
    const double study_tol = 1e-12;

    EigstudyResult result;
    result.tol = study_tol;
    struct PerSeed {
        std::vector<EigstudyRow> rows;
        std::vector<EigstudySummary> summaries;
    };
    std::vector<PerSeed> per_seed(spec.seeds.size());

    parallel_for(static_cast<int>(spec.seeds.size()), effective_threads(spec), [&](int si) {
        const std::uint64_t seed = spec.seeds[si];
        const Dataset ds = load_dataset(spec, seed);
        const int n = ds.op->dim();
        const double lambda1 = power_method(*ds.op, 1e-12, 500000).lambda;
        const SparseSphere sphere(n, n);  // full cardinality: plain PCA
        const Objective obj(ds.op);
        for (Method method : spec.methods) {
            const bool bb = method == Method::Gpbb || method == Method::MonotoneNewton;
            // tol = 0: stagnation only fires at exact numerical fixed points,
            // so slow methods are not cut off before reaching study accuracy.
            SolverConfig cfg = make_config(spec, method, bb ? 600 : 12000, 0.0);
            const SolveReport rep = solve(obj, sphere, cfg);
            int reached = -1;
            for (const TraceRow& r : rep.trace) {
                const double relerr = std::abs(lambda1 - (-r.f)) / std::abs(lambda1);
                per_seed[si].rows.push_back({seed, to_string(method), r.k, relerr});
                if (reached < 0 && relerr <= study_tol) reached = r.k;
            }
            per_seed[si].summaries.push_back(
                {seed, to_string(method), reached, rep.objective_evaluations});
        }
    });

    for (PerSeed& ps : per_seed) {
        result.rows.insert(result.rows.end(), ps.rows.begin(), ps.rows.end());
        result.summaries.insert(result.summaries.end(), ps.summaries.begin(),
                                ps.summaries.end());
    }
    return result;
}

void cmd_eigstudy(const ExperimentSpec& spec) {
    const EigstudyResult result = run_eigstudy(spec);
    const std::string out = spec.out.empty() ? "eigstudy.csv" : spec.out;
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << "seed,method,k,relerr,log10_relerr\n";
    char buf[200];
    for (const EigstudyRow& r : result.rows) {
        std::snprintf(buf, sizeof(buf), "%llu,%s,%d,%.17g,%.17g\n",
                      static_cast<unsigned long long>(r.seed), r.method.c_str(), r.k,
                      r.relerr, std::log10(r.relerr));
        f << buf;
    }
    for (const EigstudySummary& s : result.summaries)
        std::cout << "seed=" << s.seed << " method=" << s.method
                  << " iters_to_tol=" << s.iters_to_tol
                  << " objective_evaluations=" << s.objective_evaluations << "\n";
    std::cout << "wrote " << result.rows.size() << " rows to " << out << "\n";
}

DksOutcome run_dks(const Dataset& graph, Method method, int k,
                   const ExperimentSpec& spec) {
    const int n = graph.op->dim();
    if (k < 1 || k > n) throw std::invalid_argument("dks: k out of range");
    const SparseSphere sphere(n, k);
    SolverConfig cfg = make_config(spec, method, 2000, 1e-12);
    if (!spec.shift) cfg.shift = gershgorin_shift(*graph.op);
    const Objective obj(graph.op);
    const SolveReport rep = solve(obj, sphere, cfg);

    const std::vector<int> support = rep.x_final.support();
    // Density of the rounded binary indicator pi = 1_S: pi'A pi equals twice
    // the number of edges inside S, an exact integer sum.
    std::vector<double> pi(n, 0.0);
    for (int v : support) pi[v] = 1.0;
    const std::vector<double> api = graph.op->matvec(pi);
    double pi_a_pi = 0.0;
    for (int v : support) pi_a_pi += api[v];
    const double density = pi_a_pi / k;

    const double relaxed = dks_density(*graph.op, rep.x_final, k);
    const double lambda1 = largest_eigenvalue_shifted(*graph.op);
    return {to_string(method), k,       support, density,
            relaxed,           lambda1, density / lambda1,
            rep.iterations};
}

void cmd_dks(const ExperimentSpec& spec) {
    if (spec.methods.empty()) throw std::invalid_argument("no method selected");
    const Dataset graph = load_dataset(spec, spec.seeds.front());
    for (const std::string& w : graph.warnings) std::cerr << "warning: " << w << "\n";

    nlohmann::json runs = nlohmann::json::array();
    for (Method method : spec.methods) {
        const DksOutcome r = run_dks(graph, method, spec.k, spec);
        runs.push_back({{"method", r.method},
                        {"k", r.k},
                        {"support", r.support},
                        {"density", r.density},
                        {"relaxed_value", r.relaxed_value},
                        {"lambda1", r.lambda1},
                        {"ratio", r.ratio},
                        {"iterations", r.iterations}});
        std::cout << "method=" << r.method << " k=" << r.k << " density=" << r.density
                  << " ratio=" << r.ratio << " support_size=" << r.support.size()
                  << "\n";
    }
    const std::string out = spec.out.empty() ? "dks.json" : spec.out;
    write_json(out, nlohmann::json{{"dataset", graph.name},
                                   {"provenance", graph.provenance},
                                   {"runs", std::move(runs)}});
}

}  // namespace spca::bench
