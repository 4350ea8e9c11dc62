#include <array>
#include <vector>

namespace spca::detail {

// Correlation matrix of the 13 physical measurements in the pit props study
// (J. N. R. Jeffers, "Two case studies in the application of principal
// component analysis", Applied Statistics 16, 1967). Variables in the usual
// order: topdiam, length, moist, testsg, ovensg, ringtop, ringbut, bowmax,
// bowdist, whorls, clear, knots, diaknot. Upper triangle including the
// diagonal, row by row.
namespace {
constexpr std::array<double, 91> kUpper = {
    // topdiam
    1.0, 0.954, 0.364, 0.342, -0.129, 0.313, 0.496, 0.424, 0.592, 0.545, 0.084, -0.019, 0.134,
    // length
    1.0, 0.297, 0.284, -0.118, 0.291, 0.503, 0.419, 0.648, 0.569, 0.076, -0.036, 0.144,
    // moist
    1.0, 0.882, -0.148, 0.153, -0.029, -0.054, 0.125, -0.081, 0.162, 0.220, 0.126,
    // testsg
    1.0, 0.220, 0.381, 0.174, -0.059, 0.137, -0.014, 0.097, 0.169, 0.015,
    // ovensg
    1.0, 0.364, 0.296, 0.004, -0.039, 0.037, 0.091, -0.145, -0.208,
    // ringtop
    1.0, 0.813, 0.090, 0.211, 0.274, -0.036, 0.024, -0.329,
    // ringbut
    1.0, 0.372, 0.465, 0.679, -0.113, -0.232, -0.424,
    // bowmax
    1.0, 0.482, 0.557, 0.061, -0.357, -0.202,
    // bowdist
    1.0, 0.526, 0.085, -0.127, -0.076,
    // whorls
    1.0, -0.319, -0.368, -0.291,
    // clear
    1.0, 0.029, 0.007,
    // knots
    1.0, 0.184,
    // diaknot
    1.0};
}  // namespace

std::vector<double> pit_props_matrix() {
    constexpr int n = 13;
    std::vector<double> full(n * n, 0.0);
    int p = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            full[i * n + j] = kUpper[p];
            full[j * n + i] = kUpper[p];
            ++p;
        }
    }
    return full;
}

}  // namespace spca::detail
