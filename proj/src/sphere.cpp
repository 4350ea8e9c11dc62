#include "spca/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spca/vec.hpp"

namespace spca {

namespace {

// FNV-1a over the support indices (values_ order is canonical).
std::uint64_t fnv1a(const std::vector<int>& idx) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (int i : idx) {
        h ^= static_cast<std::uint64_t>(i) + 1;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

UnitSparseVector::UnitSparseVector(std::vector<double> values, const SparseSphere& sphere)
    : values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != sphere.n)
        throw std::invalid_argument("UnitSparseVector: dimension mismatch");
    if (nnz() > sphere.kappa)
        throw std::invalid_argument("UnitSparseVector: support exceeds kappa");
    if (std::abs(vec::norm(values_) - 1.0) > 1e-12)
        throw std::invalid_argument("UnitSparseVector: not unit norm");
}

int UnitSparseVector::nnz() const noexcept {
    int c = 0;
    for (double v : values_) c += (v != 0.0);
    return c;
}

std::vector<int> UnitSparseVector::support() const {
    std::vector<int> s;
    for (int i = 0; i < dim(); ++i)
        if (values_[i] != 0.0) s.push_back(i);
    return s;
}

std::uint64_t UnitSparseVector::support_fingerprint() const { return fnv1a(support()); }

bool UnitSparseVector::same_support(const UnitSparseVector& other) const {
    if (dim() != other.dim()) return false;
    for (int i = 0; i < dim(); ++i)
        if ((values_[i] != 0.0) != (other.values_[i] != 0.0)) return false;
    return true;
}

std::vector<double> truncate(std::span<const double> x, int kappa) {
    const int n = static_cast<int>(x.size());
    if (kappa < 1 || kappa > n)
        throw std::invalid_argument("truncate: kappa out of range");
    if (kappa == n) return {x.begin(), x.end()};

    // Select the kappa largest magnitudes; ties keep the lowest index. The
    // comparator is a strict total order, so the selected set is unique and
    // platform-independent.
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    auto before = [&x](int a, int b) {
        const double ma = std::abs(x[a]), mb = std::abs(x[b]);
        return ma > mb || (ma == mb && a < b);
    };
    std::nth_element(idx.begin(), idx.begin() + (kappa - 1), idx.end(), before);

    std::vector<double> out(n, 0.0);
    for (int t = 0; t < kappa; ++t) out[idx[t]] = x[idx[t]];
    return out;
}

namespace {

UnitSparseVector normalized_truncation(std::span<const double> x,
                                       const SparseSphere& sphere, double sign,
                                       const char* who) {
    if (static_cast<int>(x.size()) != sphere.n)
        throw std::invalid_argument("projection: dimension mismatch");
    std::vector<double> t = truncate(x, sphere.kappa);
    const double nt = vec::norm(t);
    if (nt == 0.0) throw DegenerateProjectionError(who);
    for (double& v : t) v *= sign / nt;
    return {std::move(t), sphere};
}

}  // namespace

UnitSparseVector project(std::span<const double> x, const SparseSphere& sphere) {
    return normalized_truncation(x, sphere, 1.0, "degenerate projection");
}

UnitSparseVector antiproject(std::span<const double> x, const SparseSphere& sphere) {
    return normalized_truncation(x, sphere, -1.0, "degenerate anti-projection");
}

namespace {

// Enumerates kappa-subsets of {0..n-1}; for each support S the optimal unit
// vector is +-x_S/||x_S|| (Schwarz), with attained squared distance
// ||x||^2 + 1 -+ 2||x_S||. Both problems therefore reduce to maximizing
// ||x_S|| over supports; supports with x_S = 0 can never win because the
// guard T_kappa(x) != 0 provides a support with positive norm.
UnitSparseVector oracle_extreme(std::span<const double> x, const SparseSphere& sphere,
                                double sign) {
    const int n = sphere.n, kappa = sphere.kappa;
    if (n > 25) throw std::invalid_argument("oracle: n exceeds combinatorial guard (25)");
    if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("oracle: dimension mismatch");

    std::vector<int> comb(kappa);
    std::iota(comb.begin(), comb.end(), 0);
    std::vector<int> best;
    double best_sq = -1.0;
    for (;;) {
        double sq = 0.0;
        for (int i : comb) sq += x[i] * x[i];
        if (sq > best_sq) {
            best_sq = sq;
            best = comb;
        }
        // next combination in lexicographic order
        int pos = kappa - 1;
        while (pos >= 0 && comb[pos] == n - kappa + pos) --pos;
        if (pos < 0) break;
        ++comb[pos];
        for (int t = pos + 1; t < kappa; ++t) comb[t] = comb[t - 1] + 1;
    }
    if (best_sq <= 0.0)
        throw DegenerateProjectionError("oracle: degenerate projection");
    const double nrm = std::sqrt(best_sq);
    std::vector<double> out(n, 0.0);
    for (int i : best) out[i] = sign * x[i] / nrm;
    return {std::move(out), sphere};
}

}  // namespace

UnitSparseVector oracle_project(std::span<const double> x, const SparseSphere& sphere) {
    return oracle_extreme(x, sphere, 1.0);
}

UnitSparseVector oracle_antiproject(std::span<const double> x, const SparseSphere& sphere) {
    return oracle_extreme(x, sphere, -1.0);
}

}  // namespace spca
