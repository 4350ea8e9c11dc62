#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace spca {

// Feasible set {x : ||x|| = 1, ||x||_0 <= kappa} in ambient dimension n.
struct SparseSphere {
    int n;
    int kappa;

    SparseSphere(int n_, int kappa_) : n(n_), kappa(kappa_) {
        if (n < 1) throw std::invalid_argument("SparseSphere: n must be >= 1");
        if (kappa < 1 || kappa > n)
            throw std::invalid_argument("SparseSphere: kappa must satisfy 1 <= kappa <= n");
    }
};

struct DegenerateProjectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A feasible point: unit norm within 1e-12, at most kappa nonzeros.
class UnitSparseVector {
public:
    UnitSparseVector(std::vector<double> values, const SparseSphere& sphere);

    const std::vector<double>& values() const noexcept { return values_; }
    std::span<const double> span() const noexcept { return values_; }
    int dim() const noexcept { return static_cast<int>(values_.size()); }
    double operator[](int i) const { return values_[i]; }

    int nnz() const noexcept;
    std::vector<int> support() const;
    std::uint64_t support_fingerprint() const;
    bool same_support(const UnitSparseVector& other) const;

private:
    std::vector<double> values_;
};

// T_kappa: zero the n-kappa smallest-magnitude entries. Equal magnitudes are
// resolved by keeping the lowest indices; kept entries are bit-identical to
// the input. O(n) expected time via partial selection.
std::vector<double> truncate(std::span<const double> x, int kappa);

// T_kappa(x)/||T_kappa(x)||: a nearest point of the sparse sphere.
// Throws DegenerateProjectionError when T_kappa(x) = 0.
UnitSparseVector project(std::span<const double> x, const SparseSphere& sphere);

// -T_kappa(x)/||T_kappa(x)||: a farthest point of the sparse sphere.
UnitSparseVector antiproject(std::span<const double> x, const SparseSphere& sphere);

// Brute-force validation oracles: enumerate all C(n, kappa) supports and
// return the distance-optimal unit vector supported there. Guarded to n <= 25.
UnitSparseVector oracle_project(std::span<const double> x, const SparseSphere& sphere);
UnitSparseVector oracle_antiproject(std::span<const double> x, const SparseSphere& sphere);

}  // namespace spca
