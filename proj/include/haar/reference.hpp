#pragma once

#include "haar/rational.hpp"

namespace haar {

// Naive serial transcriptions of the exact moment sums: plain loops over
// whole symmetric groups with per-term Weingarten lookups, no class
// bucketing and no factorization. They exist to cross-check the fast
// kernels and to give the benchmark a baseline; budgets are tighter.

/// p <= 4.
Rational reference_moment_rotated(long n, long k, int p, const RatMatrix& x);

/// Unfactorized sum over S_p^4; independently exercises the two-group
/// structure the fast kernel factorizes away. p <= 3.
Rational reference_moment_independent(long n, long k, int p);

/// Plain double sum over S_{2p}. p <= 2.
Rational reference_moment_conjugate(long n, long k, int p);

}  // namespace haar
