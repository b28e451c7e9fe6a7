#include "haar/rng.hpp"

#include <cmath>
#include <stdexcept>

#include "haar/errors.hpp"

namespace haar {

namespace {

std::uint64_t splitmix_finalize(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Xoshiro256 Xoshiro256::for_stream(std::uint64_t seed, std::uint64_t stream) {
    Xoshiro256 g;
    std::uint64_t h = splitmix_finalize(seed) ^ splitmix_finalize(stream ^ 0x5851f42d4c957f2dULL);
    // expand the 64-bit digest into the 256-bit state
    std::uint64_t z = h;
    for (auto& w : g.s_) {
        z += 0x9e3779b97f4a7c15ULL;
        std::uint64_t v = z;
        v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
        v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
        w = v ^ (v >> 31);
    }
    if ((g.s_[0] | g.s_[1] | g.s_[2] | g.s_[3]) == 0) g.s_[0] = 1;  // all-zero state is absorbing
    return g;
}

std::uint64_t Xoshiro256::next() {
    std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Xoshiro256::uniform01() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
}

std::pair<double, double> Xoshiro256::gaussian_pair() {
    double u1 = uniform01(), u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    return {r * std::cos(a), r * std::sin(a)};
}

cdouble Xoshiro256::complex_gaussian() {
    auto [x, y] = gaussian_pair();
    return cdouble(x, y) * M_SQRT1_2;
}

Eigen::MatrixXcd ginibre(int d, Xoshiro256& rng) {
    if (d < 1) throw std::invalid_argument("ginibre: dimension must be positive");
    Eigen::MatrixXcd g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = rng.complex_gaussian();
    return g;
}

double unitarity_residual(const Eigen::MatrixXcd& u) {
    Eigen::MatrixXcd r = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    return r.cwiseAbs().maxCoeff();
}

namespace {

Eigen::MatrixXcd phase_corrected_q(const Eigen::MatrixXcd& m) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR();
    for (int j = 0; j < m.cols(); ++j) {
        cdouble rjj = r(j, j);
        double a = std::abs(rjj);
        cdouble phase = a > 0 ? rjj / a : cdouble(1.0);
        q.col(j) *= phase;
    }
    return q;
}

}  // namespace

Eigen::MatrixXcd sample_haar(int d, Xoshiro256& rng) {
    Eigen::MatrixXcd u = phase_corrected_q(ginibre(d, rng));
    if (unitarity_residual(u) >= 1e-12) {
        u = phase_corrected_q(u);
        if (unitarity_residual(u) >= 1e-12)
            throw ValidationError("sample_haar: unitarity residual above 1e-12");
    }
    return u;
}

}  // namespace haar
