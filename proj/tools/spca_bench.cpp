#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spca/bench.hpp"

namespace {

using spca::bench::ExperimentSpec;

void add_common_flags(CLI::App* cmd, ExperimentSpec& spec,
                      std::vector<std::string>& method_names,
                      std::string& bb_variant_name) {
    cmd->add_option("--dataset", spec.dataset,
                    "pitprops|random|identity|mtx:<path>|csv:<path>");
    cmd->add_option("--method", method_names, "gpu|tpower|gpbb|mnewton (repeatable)");
    cmd->add_option("--kappa", spec.kappas, "cardinality budget(s)")->delimiter(',');
    cmd->add_option("--m", spec.ms, "data matrix row count(s), random dataset")
        ->delimiter(',');
    cmd->add_option("--n", spec.n, "ambient dimension (random/identity)");
    cmd->add_option("--seed", spec.seeds, "seed(s)")->delimiter(',');
    cmd->add_option("--seeds", spec.seeds, "alias of --seed")->delimiter(',');
    cmd->add_option("--max-iter", spec.max_iter, "iteration budget");
    cmd->add_option("--tol", spec.tol, "relative stagnation tolerance");
    cmd->add_option("--step-size", spec.step_size, "fixed gradient-projection step");
    cmd->add_option("--sigma", spec.sigma, "backtracking factor, in (0,1)");
    cmd->add_option("--alpha-min", spec.alpha_min, "lower Hessian-surrogate bound (< 0)");
    cmd->add_option("--alpha-max", spec.alpha_max, "upper Hessian-surrogate bound (< 0)");
    cmd->add_option("--bb-variant", bb_variant_name,
                    "signed-rayleigh|magnitude-negated");
    cmd->add_option("--shift", spec.shift, "spectral shift c added to the operator");
    cmd->add_option("--out", spec.out, "output path");
    cmd->add_option("--threads", spec.threads, "worker threads (0 = hardware)");
}

void finalize_spec(ExperimentSpec& spec, const std::vector<std::string>& method_names,
                   const std::string& bb_variant_name,
                   const std::vector<spca::Method>& default_methods) {
    for (const std::string& name : method_names) {
        const auto m = spca::method_from_string(name);
        if (!m) throw CLI::ValidationError("--method", "unknown method '" + name + "'");
        spec.methods.push_back(*m);
    }
    if (spec.methods.empty()) spec.methods = default_methods;
    if (!bb_variant_name.empty()) {
        const auto v = spca::bb_variant_from_string(bb_variant_name);
        if (!v)
            throw CLI::ValidationError("--bb-variant",
                                       "unknown variant '" + bb_variant_name + "'");
        spec.bb_variant = *v;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse PCA / densest-k-subgraph benchmark harness"};
    app.require_subcommand(1);

    ExperimentSpec solve_spec, sweep_spec, eig_spec, dks_spec;
    std::vector<std::string> solve_methods, sweep_methods, eig_methods, dks_methods;
    std::string solve_bb, sweep_bb, eig_bb, dks_bb;

    CLI::App* solve = app.add_subcommand("solve", "single solver run -> JSON + CSV trace");
    add_common_flags(solve, solve_spec, solve_methods, solve_bb);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "mean explained variance over seeds per (method, kappa, m) -> CSV");
    add_common_flags(sweep, sweep_spec, sweep_methods, sweep_bb);

    CLI::App* eigstudy = app.add_subcommand(
        "eigstudy", "full-cardinality relative eigenvalue error per iteration -> CSV");
    add_common_flags(eigstudy, eig_spec, eig_methods, eig_bb);

    CLI::App* dks = app.add_subcommand("dks",
                                       "densest-k-subgraph relaxation on a graph file");
    add_common_flags(dks, dks_spec, dks_methods, dks_bb);
    dks->add_option("--k", dks_spec.k, "subgraph cardinality")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) {
            finalize_spec(solve_spec, solve_methods, solve_bb, {spca::Method::Gpbb});
            if (solve_spec.kappas.empty())
                throw CLI::ValidationError("--kappa", "solve needs a cardinality");
            spca::bench::cmd_solve(solve_spec);
        } else if (sweep->parsed()) {
            finalize_spec(sweep_spec, sweep_methods, sweep_bb,
                          {spca::Method::Gpu, spca::Method::Tpower, spca::Method::Gpbb});
            sweep_spec.dataset = "random";
            if (sweep_spec.kappas.empty())
                throw CLI::ValidationError("--kappa", "sweep needs a kappa list");
            if (sweep_spec.seeds.size() == 1 && sweep_spec.seeds.front() == 1) {
                sweep_spec.seeds.clear();
                for (std::uint64_t s = 1; s <= 20; ++s) sweep_spec.seeds.push_back(s);
            }
            spca::bench::cmd_sweep(sweep_spec);
        } else if (eigstudy->parsed()) {
            finalize_spec(eig_spec, eig_methods, eig_bb,
                          {spca::Method::Gpu, spca::Method::Tpower, spca::Method::Gpbb,
                           spca::Method::MonotoneNewton});
            eig_spec.dataset = "random";
            spca::bench::cmd_eigstudy(eig_spec);
        } else if (dks->parsed()) {
            finalize_spec(dks_spec, dks_methods, dks_bb,
                          {spca::Method::Gpbb, spca::Method::Tpower});
            spca::bench::cmd_dks(dks_spec);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
