#pragma once

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

#include "haar/rational.hpp"

namespace haar {

enum class ModelKind { rotated, independent, conjugate, generalized };

/// Regime I: n fixed, k -> infinity. Regime II: k fixed, n -> infinity.
enum class Regime { k_large, n_large };

struct ChannelModel {
    ModelKind kind = ModelKind::conjugate;
    long n = 2;
    long k = 2;
    double t = 0.5;   // generalized only
};

std::string model_kind_name(ModelKind kind);
ModelKind model_kind_parse(const std::string& name);
void validate_model(const ChannelModel& m);

// ---- Numeric channel machinery ----
//
// The channel sends an n x n state X to tr_k[U (X tensor e1 e1*) U*] for a
// unitary U on the n*k-dimensional composite space, basis (a,s) -> a*k+s.

/// The k operators L_i = (I tensor <e_i|) U (I tensor |e_1>); they satisfy
/// sum L_i* L_i = I within 1e-10 for unitary U.
std::vector<Eigen::MatrixXcd> kraus_from_unitary(const Eigen::MatrixXcd& u, long n, long k);

Eigen::MatrixXcd stinespring_apply(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& x,
                                   long n, long k);

/// Output of (Phi^U tensor Phi^V) on the normalized maximally entangled state
/// built over the listed input columns: the output equals A A* for the
/// n^2 x k^2 matrix A with
///   A[(a,b),(s,t)] = sum_{i in columns} U[(a,s),i] V[(b,t),i] / sqrt(|columns|).
/// pair_gram returns A* A instead: same nonzero spectrum, k^2 x k^2.
Eigen::MatrixXcd pair_output(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v,
                             long n, long k, const std::vector<long>& columns);
Eigen::MatrixXcd pair_gram(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v,
                           long n, long k, const std::vector<long>& columns);

/// Input columns of the standard two-channel models: the embedded n-dimensional
/// maximally entangled input occupies columns a*k, a < n.
std::vector<long> bell_input_columns(long n, long k);

/// tr(Z E_n) for Z = A A* without forming Z: the squared norm of A* applied
/// to the normalized maximally entangled output vector.
double pair_bell_overlap(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v,
                         long n, long k, const std::vector<long>& columns);

/// round(t n k), validated to lie in [1, nk].
long generalized_rank(long n, long k, double t);

/// Z = (Phi^U tensor Phi^{U-bar}) applied to the normalized maximally
/// entangled state over the first round(t n k) basis columns.
Eigen::MatrixXcd generalized_apply(const Eigen::MatrixXcd& u, long n, long k, double t);

/// (overlap tr(Z E_n), overlap >= t - 1e-10) for the normalized maximally
/// entangled projector E_n on the n^2-dimensional output; the top eigenvalue
/// of Z is at least the overlap.
std::pair<double, bool> hayden_bound(const Eigen::MatrixXcd& z, long n, double t);

// ---- Exact moment kernels ----
//
// Class-bucketed permutation sums: terms are grouped by the integer data
// (cycle counts, conjugacy classes) they depend on, so the hot loop is pure
// table lookups; rational assembly runs once per bucket. OpenMP shards the
// outer index; rational addition is exact, so the reduction order is free.

/// E tr(Y^p) for Y = tr_k(U X U*), X an explicit nk x nk matrix. p <= 6.
Rational exact_moment_rotated(long n, long k, int p, const RatMatrix& x);

/// Same with X a rank-one projector: single sum over S_p, p <= 8.
Rational exact_moment_rotated_rank_one(long n, long k, int p);

/// E tr(Z^p) for Z = (Phi^U tensor Phi^V)(E_n), U, V independent. p <= 6.
Rational exact_moment_independent(long n, long k, int p);

/// E tr(Z^p) for Z = (Phi^U tensor Phi^{U-bar})(E_n); sums over S_{2p}^2,
/// p <= 3.
Rational exact_moment_conjugate(long n, long k, int p);

/// E[(tr Z)^2] for the conjugate pair via the doubled sum over S_4^2, and the
/// covariance E[(tr Z)^2] - (E tr Z)^2. Both are trivial by trace
/// preservation (1 and 0); the point is that the doubled-sum evaluator
/// reproduces them exactly.
Rational second_moment_conjugate_p1(long n, long k);
Rational covariance_exact_p1(long n, long k);

// ---- Limits ----

/// lim_n E tr(Z^p) for the conjugate pair at fixed k:
/// (1/k + 1/k^2 - 1/k^3)^p + (k^2 - 1)(1/k^2 - 1/k^3)^p.
Rational geodesic_limit_conjugate(long k, int p);

/// The same limit as the sum over nested-subset geodesic pairs,
/// sum k^{-(|alpha| + |alpha beta^{-1}|)} Mob(alpha beta^{-1}); agrees with
/// the closed form exactly.
Rational geodesic_limit_conjugate_sum(long k, int p);

/// Predicted limit eigenvalue list, descending, padded with zeros to n^2.
/// Supported: independent/conjugate in both regimes, generalized in the
/// n-large regime (t + (1-t)/k^2, then (1-t)/k^2 with multiplicity k^2 - 1).
std::vector<Rational> limit_spectrum(ModelKind kind, long n, long k, const Rational& t,
                                     Regime regime);

}  // namespace haar
