#pragma once

#include <vector>

#include "haar/channels.hpp"
#include "haar/rng.hpp"
#include "haar/weingarten.hpp"

namespace haar {

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;   // sample std / sqrt(samples)
    long samples = 0;
};

/// Complex mean reported coordinate-wise.
struct McComplexEstimate {
    McEstimate re, im;
};

// Sample i always draws from stream cfg.stream + i (the independent model
// uses cfg.stream + 2i and cfg.stream + 2i + 1), and per-sample values are
// reduced in sample order. Results are therefore identical for every thread
// or shard count, not merely for a fixed one.

McComplexEstimate mc_monomial_integral(const MonomialSpec& spec, long samples,
                                       const RngConfig& cfg);

/// E tr(Z^p); the rotated model means Y = tr_k(U e1e1* U*).
McEstimate mc_channel_moment(const ChannelModel& model, int p, long samples,
                             const RngConfig& cfg);

struct SpectrumStats {
    std::vector<double> mean;     // ordered eigenvalues, descending
    std::vector<double> spread;   // sample std per rank
    long samples = 0;
    long max_nonzero = 0;         // largest per-sample count of eigenvalues > 1e-9
};

/// Ordered-eigenvalue statistics of the model's output state. Small outputs
/// are diagonalized directly; past 6x6 the spectrum comes from the
/// environment-side Gram matrix, whose nonzero eigenvalues are the same,
/// padded with zeros.
SpectrumStats mc_spectrum(const ChannelModel& model, long samples, const RngConfig& cfg);

struct VarianceDecay {
    std::vector<long> n_grid;
    std::vector<double> variance;   // Var[tr(Z^p)] per grid point
    double slope = 0.0;             // least-squares slope of log var vs log n
    bool has_slope = false;         // false when some variance is at noise level
};

VarianceDecay mc_variance_decay(const ChannelModel& model, int p, const std::vector<long>& n_grid,
                                long samples, const RngConfig& cfg);

}  // namespace haar
