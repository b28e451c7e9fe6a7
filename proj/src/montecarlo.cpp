#include "haar/montecarlo.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace haar {

namespace {

using cd = std::complex<double>;

McEstimate reduce_in_order(const std::vector<double>& vals) {
    long n = static_cast<long>(vals.size());
    double sum = 0;
    for (double v : vals) sum += v;
    double mean = sum / static_cast<double>(n);
    double ss = 0;
    for (double v : vals) ss += (v - mean) * (v - mean);
    double var = ss / static_cast<double>(n - 1);
    return {mean, std::sqrt(var / static_cast<double>(n)), n};
}

void check_samples(long samples) {
    if (samples < 2) throw std::invalid_argument("monte carlo: needs at least 2 samples");
}

double trace_power(const Eigen::MatrixXcd& w, int p) {
    Eigen::MatrixXcd acc = w;
    for (int j = 2; j <= p; ++j) acc = acc * w;
    return acc.trace().real();
}

// Environment-side matrix whose Gram spectrum carries the model's nonzero
// eigenvalues: W = A* A for the same A with Z = A A*.
Eigen::MatrixXcd sample_gram(const ChannelModel& m, long i, const RngConfig& cfg) {
    std::uint64_t base = cfg.stream;
    switch (m.kind) {
        case ModelKind::rotated: {
            auto rng = Xoshiro256::for_stream(cfg.seed, base + static_cast<std::uint64_t>(i));
            Eigen::MatrixXcd u = sample_haar(static_cast<int>(m.n * m.k), rng);
            Eigen::MatrixXcd col(m.n, m.k);
            for (long a = 0; a < m.n; ++a)
                for (long s = 0; s < m.k; ++s) col(a, s) = u(a * m.k + s, 0);
            return col.adjoint() * col;   // k x k
        }
        case ModelKind::independent: {
            auto r1 = Xoshiro256::for_stream(cfg.seed, base + 2 * static_cast<std::uint64_t>(i));
            auto r2 = Xoshiro256::for_stream(cfg.seed, base + 2 * static_cast<std::uint64_t>(i) + 1);
            Eigen::MatrixXcd u = sample_haar(static_cast<int>(m.n * m.k), r1);
            Eigen::MatrixXcd v = sample_haar(static_cast<int>(m.n * m.k), r2);
            return pair_gram(u, v, m.n, m.k, bell_input_columns(m.n, m.k));
        }
        case ModelKind::conjugate: {
            auto rng = Xoshiro256::for_stream(cfg.seed, base + static_cast<std::uint64_t>(i));
            Eigen::MatrixXcd u = sample_haar(static_cast<int>(m.n * m.k), rng);
            return pair_gram(u, u.conjugate(), m.n, m.k, bell_input_columns(m.n, m.k));
        }
        case ModelKind::generalized: {
            auto rng = Xoshiro256::for_stream(cfg.seed, base + static_cast<std::uint64_t>(i));
            Eigen::MatrixXcd u = sample_haar(static_cast<int>(m.n * m.k), rng);
            long rank = generalized_rank(m.n, m.k, m.t);
            std::vector<long> cols(static_cast<size_t>(rank));
            for (long c = 0; c < rank; ++c) cols[static_cast<size_t>(c)] = c;
            return pair_gram(u, u.conjugate(), m.n, m.k, cols);
        }
    }
    throw std::invalid_argument("monte carlo: unknown model kind");
}

// Output-side matrix, for direct diagonalization at small sizes.
Eigen::MatrixXcd sample_output(const ChannelModel& m, long i, const RngConfig& cfg) {
    std::uint64_t base = cfg.stream;
    switch (m.kind) {
        case ModelKind::rotated: {
            auto rng = Xoshiro256::for_stream(cfg.seed, base + static_cast<std::uint64_t>(i));
            Eigen::MatrixXcd u = sample_haar(static_cast<int>(m.n * m.k), rng);
            Eigen::MatrixXcd col(m.n, m.k);
            for (long a = 0; a < m.n; ++a)
                for (long s = 0; s < m.k; ++s) col(a, s) = u(a * m.k + s, 0);
            return col * col.adjoint();   // n x n
        }
        case ModelKind::independent: {
            auto r1 = Xoshiro256::for_stream(cfg.seed, base + 2 * static_cast<std::uint64_t>(i));
            auto r2 = Xoshiro256::for_stream(cfg.seed, base + 2 * static_cast<std::uint64_t>(i) + 1);
            Eigen::MatrixXcd u = sample_haar(static_cast<int>(m.n * m.k), r1);
            Eigen::MatrixXcd v = sample_haar(static_cast<int>(m.n * m.k), r2);
            return pair_output(u, v, m.n, m.k, bell_input_columns(m.n, m.k));
        }
        case ModelKind::conjugate: {
            auto rng = Xoshiro256::for_stream(cfg.seed, base + static_cast<std::uint64_t>(i));
            Eigen::MatrixXcd u = sample_haar(static_cast<int>(m.n * m.k), rng);
            return pair_output(u, u.conjugate(), m.n, m.k, bell_input_columns(m.n, m.k));
        }
        case ModelKind::generalized: {
            auto rng = Xoshiro256::for_stream(cfg.seed, base + static_cast<std::uint64_t>(i));
            return generalized_apply(sample_haar(static_cast<int>(m.n * m.k), rng), m.n, m.k, m.t);
        }
    }
    throw std::invalid_argument("monte carlo: unknown model kind");
}

long output_dim(const ChannelModel& m) {
    return m.kind == ModelKind::rotated ? m.n : m.n * m.n;
}

}  // namespace

McComplexEstimate mc_monomial_integral(const MonomialSpec& spec, long samples,
                                       const RngConfig& cfg) {
    check_samples(samples);
    if (spec.n < 1) throw std::invalid_argument("mc_monomial_integral: n must be >= 1");
    if (spec.i.size() != spec.j.size() || spec.ip.size() != spec.jp.size())
        throw std::invalid_argument("mc_monomial_integral: index lists must pair up");
    auto in_range = [&](const std::vector<int>& v) {
        return std::all_of(v.begin(), v.end(),
                           [&](int x) { return x >= 0 && x < spec.n; });
    };
    if (!in_range(spec.i) || !in_range(spec.j) || !in_range(spec.ip) || !in_range(spec.jp))
        throw std::invalid_argument("mc_monomial_integral: index out of range");

    std::vector<double> re(static_cast<size_t>(samples)), im(static_cast<size_t>(samples));
#pragma omp parallel for schedule(static)
    for (long s = 0; s < samples; ++s) {
        auto rng = Xoshiro256::for_stream(cfg.seed, cfg.stream + static_cast<std::uint64_t>(s));
        Eigen::MatrixXcd u = sample_haar(static_cast<int>(spec.n), rng);
        cd prod(1.0, 0.0);
        for (size_t m = 0; m < spec.i.size(); ++m)
            prod *= u(spec.i[m], spec.j[m]);
        for (size_t m = 0; m < spec.ip.size(); ++m)
            prod *= std::conj(u(spec.ip[m], spec.jp[m]));
        re[static_cast<size_t>(s)] = prod.real();
        im[static_cast<size_t>(s)] = prod.imag();
    }
    return {reduce_in_order(re), reduce_in_order(im)};
}

McEstimate mc_channel_moment(const ChannelModel& model, int p, long samples,
                             const RngConfig& cfg) {
    check_samples(samples);
    validate_model(model);
    if (p < 1) throw std::invalid_argument("mc_channel_moment: p must be >= 1");

    std::vector<double> vals(static_cast<size_t>(samples));
#pragma omp parallel for schedule(static)
    for (long i = 0; i < samples; ++i)
        vals[static_cast<size_t>(i)] = trace_power(sample_gram(model, i, cfg), p);
    return reduce_in_order(vals);
}

SpectrumStats mc_spectrum(const ChannelModel& model, long samples, const RngConfig& cfg) {
    check_samples(samples);
    validate_model(model);

    const long dim = output_dim(model);
    const bool direct = dim <= 36;
    std::vector<std::vector<double>> eigs(static_cast<size_t>(samples));
    std::vector<long> nonzero(static_cast<size_t>(samples));
#pragma omp parallel for schedule(static)
    for (long i = 0; i < samples; ++i) {
        Eigen::MatrixXcd w = direct ? sample_output(model, i, cfg) : sample_gram(model, i, cfg);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(w);
        std::vector<double> e(es.eigenvalues().data(),
                              es.eigenvalues().data() + es.eigenvalues().size());
        std::sort(e.begin(), e.end(), std::greater<double>());
        e.resize(static_cast<size_t>(dim), 0.0);
        nonzero[static_cast<size_t>(i)] =
            std::count_if(e.begin(), e.end(), [](double x) { return x > 1e-9; });
        eigs[static_cast<size_t>(i)] = std::move(e);
    }

    SpectrumStats out;
    out.samples = samples;
    out.mean.assign(static_cast<size_t>(dim), 0.0);
    out.spread.assign(static_cast<size_t>(dim), 0.0);
    for (long i = 0; i < samples; ++i) {
        out.max_nonzero = std::max(out.max_nonzero, nonzero[static_cast<size_t>(i)]);
        for (long r = 0; r < dim; ++r)
            out.mean[static_cast<size_t>(r)] += eigs[static_cast<size_t>(i)][static_cast<size_t>(r)];
    }
    for (double& m : out.mean) m /= static_cast<double>(samples);
    for (long i = 0; i < samples; ++i)
        for (long r = 0; r < dim; ++r) {
            double d = eigs[static_cast<size_t>(i)][static_cast<size_t>(r)] -
                       out.mean[static_cast<size_t>(r)];
            out.spread[static_cast<size_t>(r)] += d * d;
        }
    for (double& s : out.spread) s = std::sqrt(s / static_cast<double>(samples - 1));
    return out;
}

VarianceDecay mc_variance_decay(const ChannelModel& model, int p, const std::vector<long>& n_grid,
                                long samples, const RngConfig& cfg) {
    check_samples(samples);
    if (n_grid.empty()) throw std::invalid_argument("mc_variance_decay: empty grid");
    for (size_t i = 1; i < n_grid.size(); ++i)
        if (n_grid[i] <= n_grid[i - 1])
            throw std::invalid_argument("mc_variance_decay: grid must increase");

    VarianceDecay out;
    out.n_grid = n_grid;
    for (long n : n_grid) {
        ChannelModel m = model;
        m.n = n;
        McEstimate e = mc_channel_moment(m, p, samples, cfg);
        // invert stderr = sqrt(var / samples)
        out.variance.push_back(e.std_error * e.std_error * static_cast<double>(samples));
    }

    // a variance at rounding-noise scale carries no decay signal
    out.has_slope = n_grid.size() >= 2 &&
                    std::all_of(out.variance.begin(), out.variance.end(),
                                [](double v) { return v > 1e-24; });
    if (out.has_slope) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        double m = static_cast<double>(n_grid.size());
        for (size_t i = 0; i < n_grid.size(); ++i) {
            double x = std::log(static_cast<double>(n_grid[i]));
            double y = std::log(out.variance[i]);
            sx += x; sy += y; sxx += x * x; sxy += x * y;
        }
        out.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    }
    return out;
}

}  // namespace haar
