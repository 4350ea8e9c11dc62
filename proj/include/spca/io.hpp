#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spca/linops.hpp"
#include "spca/solvers.hpp"

#include <json.hpp>

namespace spca {

struct Dataset {
    std::string name;
    OperatorPtr op;
    std::string provenance;
    std::vector<std::string> warnings;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, int line_no)
        : std::runtime_error(what + " (line " + std::to_string(line_no) + ")"),
          line(line_no) {}
    int line;
};

// The 13x13 pit props correlation matrix (Jeffers, 1967), embedded so tests
// stay hermetic.
Dataset pit_props();

// Sigma = A'A with A an m-by-n matrix of standard normals drawn from the
// counter-based generator in rng.hpp (SplitMix64 stream + Box-Muller);
// element (i,j) uses stream position i*n + j, so the bytes depend only on
// (m, n, seed).
Dataset random_gaussian(int m, int n, std::uint64_t seed);

// Identity covariance; built-in diagnostic dataset.
Dataset identity_dataset(int n);

// Matrix Market coordinate file -> simple-graph adjacency. Pattern/real/
// integer fields, symmetric or general headers. General files are
// symmetrized by presence of either (i,j) or (j,i); duplicates collapse;
// self-loops are dropped with a warning.
Dataset read_matrix_market(const std::string& path);

// Comma-separated square symmetric matrix, optional header row.
Dataset read_dense_matrix(const std::string& path, bool header = false);

void write_dense_matrix(const std::string& path, int n,
                        const std::vector<double>& row_major);

// Flat trace: k,f,gap,alpha per row.
void write_trace_csv(const std::string& path, const std::vector<TraceRow>& trace);

// Report schema: {method, kappa, iterations, explained_variance, density,
// trace:[{k,f,gap,alpha}...]} plus run metadata.
nlohmann::json report_to_json(const std::string& method, int kappa,
                              const SolveReport& report, double explained_variance,
                              const nlohmann::json& density /* number or null */);

void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace spca
