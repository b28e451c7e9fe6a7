#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <utility>

#include "haar/tensor.hpp"

namespace haar {

struct RngConfig {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

/// xoshiro256++ with splitmix64-finalized seeding. Streams are derived as
/// finalize(seed) xor finalize(stream-tweak), so one (seed, stream) pair
/// always reproduces one generator state; parallel work assigns one stream
/// per sample and stays independent of the shard layout.
class Xoshiro256 {
  public:
    static Xoshiro256 for_stream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next();
    double uniform01();                          // in (0, 1]
    std::pair<double, double> gaussian_pair();   // independent N(0,1)
    cdouble complex_gaussian();                  // E|z|^2 = 1

  private:
    std::uint64_t s_[4] = {1, 2, 3, 4};
};

/// d x d matrix of independent standard complex Gaussians, filled row-major.
Eigen::MatrixXcd ginibre(int d, Xoshiro256& rng);

double unitarity_residual(const Eigen::MatrixXcd& u);   // max |U*U - I|

/// Haar sample: QR of a Ginibre matrix with the R diagonal's phases divided
/// out (plain QR alone is not Haar). Residual above 1e-12 gets one
/// deterministic re-orthonormalization, then is a hard error.
Eigen::MatrixXcd sample_haar(int d, Xoshiro256& rng);

}  // namespace haar
