#include "valgeo/random.hpp"

#include <cmath>

#include "valgeo/errors.hpp"

namespace valgeo {

namespace {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t RandomStream::next_u64() {
    const std::uint64_t v = mix64(seed_ ^ mix64(counter_));
    ++counter_;
    return v;
}

double RandomStream::uniform() {
    // 53 high bits -> double in [0,1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t RandomStream::uniform_index(std::uint64_t m) {
    if (m == 0) throw BadDimension("uniform_index: m must be positive");
    // rejection to avoid modulo bias
    const std::uint64_t limit = m * (UINT64_MAX / m);
    std::uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return v % m;
}

double RandomStream::normal() {
    double u1 = uniform();
    const double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Eigen::VectorXd RandomStream::normal_vector(int n) {
    Eigen::VectorXd v(n);
    for (int k = 0; k < n; ++k) v[k] = normal();
    return v;
}

Eigen::MatrixXd RandomStream::normal_matrix(int rows, int cols) {
    Eigen::MatrixXd m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = normal();
    return m;
}

Eigen::VectorXd RandomStream::unit_vector(int n) {
    while (true) {
        Eigen::VectorXd v = normal_vector(n);
        const double nrm = v.norm();
        if (nrm > 1e-12) return v / nrm;
    }
}

RandomStream RandomStream::fork(std::uint64_t id) const {
    return RandomStream(mix64(seed_ ^ mix64(0x5eedf0c4ULL + id)), 0);
}

}  // namespace valgeo
