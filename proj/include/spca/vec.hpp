#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace spca::vec {

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(std::span<const double> a) {
    return std::sqrt(dot(a, a));
}

inline double norm_diff(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// y += c * x
inline void axpy(double c, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += c * x[i];
}

inline void scale(double c, std::span<double> x) {
    for (double& v : x) v *= c;
}

inline std::vector<double> scaled(std::span<const double> x, double c) {
    std::vector<double> r(x.begin(), x.end());
    scale(c, r);
    return r;
}

}  // namespace spca::vec
