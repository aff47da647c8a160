#pragma once

#include <cstdint>

#include <Eigen/Core>

namespace valgeo {

// Counter-based pseudo-random stream. A draw is a pure function of
// (seed, counter), so identical seed+counter reproduce identical values
// across runs and platforms. Substreams for concurrent use are derived by
// partitioning the counter space through fork().
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t counter = 0)
        : seed_(seed), counter_(counter) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t counter() const { return counter_; }

    // Next raw 64-bit value.
    std::uint64_t next_u64();

    // Uniform in [0, 1).
    double uniform();

    // Uniform in [lo, hi).
    double uniform(double lo, double hi);

    // Uniform integer in [0, m).
    std::uint64_t uniform_index(std::uint64_t m);

    // Standard normal via Box-Muller; consumes two uniforms per call.
    double normal();

    // Vector/matrix of i.i.d. standard normals.
    Eigen::VectorXd normal_vector(int n);
    Eigen::MatrixXd normal_matrix(int rows, int cols);

    // Uniform direction on the unit sphere of R^n.
    Eigen::VectorXd unit_vector(int n);

    // Independent stream; distinct ids give disjoint draws.
    RandomStream fork(std::uint64_t id) const;

private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

}  // namespace valgeo
