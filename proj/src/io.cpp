#include "spca/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "spca/rng.hpp"

namespace spca {

namespace detail {
std::vector<double> pit_props_matrix();
}

Dataset pit_props() {
    auto op = std::make_shared<DenseOperator>(13, detail::pit_props_matrix());
    return {"pitprops", op,
            "Correlation matrix of the pit props dataset (Jeffers 1967; 180 "
            "observations, 13 variables), embedded verbatim.",
            {}};
}

Dataset random_gaussian(int m, int n, std::uint64_t seed) {
    if (m < 1 || n < 1)
        throw std::invalid_argument("random_gaussian: m and n must be >= 1");
    std::vector<double> a(static_cast<std::size_t>(m) * n);
    for (std::size_t t = 0; t < a.size(); ++t) a[t] = rng::gaussian(seed, t);
    auto op = std::make_shared<GramOperator>(m, n, std::move(a));
    std::ostringstream prov;
    prov << "Gram operator of a " << m << "x" << n
         << " standard normal matrix; SplitMix64 counter stream + Box-Muller, seed "
         << seed << ".";
    return {"random", op, prov.str(), {}};
}

Dataset identity_dataset(int n) {
    std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i) * n + i] = 1.0;
    return {"identity", std::make_shared<DenseOperator>(n, std::move(a)),
            "Identity covariance (diagnostic).", {}};
}

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

}  // namespace

Dataset read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);

    std::string line;
    int line_no = 1;
    if (!std::getline(in, line)) throw ParseError("empty file", 0);
    std::istringstream hdr(line);
    std::string banner, object, format, field, symmetry;
    hdr >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || lower(object) != "matrix" ||
        lower(format) != "coordinate")
        throw ParseError("expected '%%MatrixMarket matrix coordinate ...' header",
                         line_no);
    field = lower(field);
    symmetry = lower(symmetry);
    if (field != "pattern" && field != "real" && field != "integer")
        throw ParseError("unsupported field type '" + field + "'", line_no);
    if (symmetry != "symmetric" && symmetry != "general")
        throw ParseError("unsupported symmetry '" + symmetry + "'", line_no);

    long rows = -1, cols = -1, nnz = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line[0] == '%') continue;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream sz(line);
        if (!(sz >> rows >> cols >> nnz))
            throw ParseError("malformed size line", line_no);
        break;
    }
    if (rows < 1 || cols < 1 || nnz < 0) throw ParseError("bad matrix size", line_no);
    if (rows != cols) throw ParseError("adjacency matrix must be square", line_no);

    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(nnz));
    std::vector<std::string> warnings;
    long seen = 0;
    while (seen < nnz && std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line[0] == '%') continue;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream es(line);
        long i, j;
        if (!(es >> i >> j)) throw ParseError("malformed entry", line_no);
        double v = 1.0;
        if (field != "pattern" && !(es >> v))
            throw ParseError("missing value", line_no);
        if (i < 1 || i > rows || j < 1 || j > cols)
            throw ParseError("index out of range", line_no);
        ++seen;
        if (v == 0.0) continue;
        if (i == j) {
            warnings.push_back("self-loop at vertex " + std::to_string(i) +
                               " dropped (line " + std::to_string(line_no) + ")");
            continue;
        }
        edges.emplace_back(static_cast<int>(i - 1), static_cast<int>(j - 1));
    }
    if (seen < nnz) throw ParseError("unexpected end of file", line_no);

    auto op = std::make_shared<SparseAdjacencyOperator>(static_cast<int>(rows), edges);
    std::ostringstream prov;
    prov << "Matrix Market graph from " << path << ": " << rows << " vertices, "
         << op->edge_count() << " edges.";
    Dataset ds{"mtx:" + path, op, prov.str(), std::move(warnings)};
    return ds;
}

Dataset read_dense_matrix(const std::string& path, bool header) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    int line_no = 0;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (header && line_no == 1) continue;
        if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ParseError("non-numeric cell '" + cell + "'", line_no);
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError("ragged row", line_no);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("no data rows", line_no);
    const int n = static_cast<int>(rows.size());
    if (static_cast<int>(rows.front().size()) != n)
        throw ParseError("matrix is not square", line_no);
    std::vector<double> a(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i) * n + j] = rows[i][j];
    // DenseOperator enforces symmetry to 1e-8.
    auto op = std::make_shared<DenseOperator>(n, std::move(a));
    return {"csv:" + path, op, "Dense symmetric matrix from " + path + ".", {}};
}

void write_dense_matrix(const std::string& path, int n,
                        const std::vector<double>& row_major) {
    if (row_major.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("write_dense_matrix: size mismatch");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    char buf[64];
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g",
                          row_major[static_cast<std::size_t>(i) * n + j]);
            out << buf << (j + 1 < n ? "," : "");
        }
        out << "\n";
    }
}

void write_trace_csv(const std::string& path, const std::vector<TraceRow>& trace) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "k,f,gap,alpha\n";
    char buf[160];
    for (const TraceRow& r : trace) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g\n", r.k, r.f, r.gap,
                      r.alpha);
        out << buf;
    }
}

nlohmann::json report_to_json(const std::string& method, int kappa,
                              const SolveReport& report, double explained_variance,
                              const nlohmann::json& density) {
    nlohmann::json trace = nlohmann::json::array();
    for (const TraceRow& r : report.trace) {
        nlohmann::json row{{"k", r.k}, {"f", r.f}, {"gap", r.gap}};
        if (std::isnan(r.alpha))
            row["alpha"] = nullptr;
        else
            row["alpha"] = r.alpha;
        trace.push_back(std::move(row));
    }
    return nlohmann::json{{"method", method},
                          {"kappa", kappa},
                          {"iterations", report.iterations},
                          {"explained_variance", explained_variance},
                          {"density", density},
                          {"termination", to_string(report.reason)},
                          {"objective_evaluations", report.objective_evaluations},
                          {"trace", std::move(trace)}};
}

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace spca
