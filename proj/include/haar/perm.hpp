#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "haar/rational.hpp"

namespace haar {

/// Permutation of {1..p} in one-line notation. Internally points are 0-based;
/// the 1-based view appears only at construction/serialization boundaries.
class Permutation {
  public:
    Permutation() = default;
    explicit Permutation(int p);                           // identity
    explicit Permutation(std::vector<int> images0);        // 0-based images
    static Permutation from_one_based(const std::vector<int>& images1);

    int size() const { return static_cast<int>(img_.size()); }
    int operator()(int i) const { return img_[i]; }        // 0-based apply

    Permutation inverse() const;
    /// Function composition: (a*b)(i) = a(b(i)).
    friend Permutation operator*(const Permutation& a, const Permutation& b);

    bool operator==(const Permutation& o) const { return img_ == o.img_; }
    bool operator!=(const Permutation& o) const { return img_ != o.img_; }
    bool operator<(const Permutation& o) const { return img_ < o.img_; }

    bool is_identity() const;
    std::vector<std::vector<int>> cycles() const;          // 0-based points
    int cycle_count() const;
    std::vector<int> one_based_images() const;
    std::string to_string() const;                         // e.g. [2,1,3]

    const std::vector<int>& images() const { return img_; }

  private:
    std::vector<int> img_;
    void check() const;
};

/// Cycle type as a partition, parts descending.
struct CycleType {
    std::vector<int> parts;

    CycleType() = default;
    explicit CycleType(std::vector<int> p);
    static CycleType of(const Permutation& a);

    int sum() const;
    int count() const { return static_cast<int>(parts.size()); }
    std::string to_string() const;                         // "3+1+1"
    static CycleType parse(const std::string& s, int expected_sum = -1);

    bool operator==(const CycleType& o) const { return parts == o.parts; }
    bool operator<(const CycleType& o) const { return parts < o.parts; }
};

CycleType cycle_type(const Permutation& a);

/// |a| = p - #cycles(a): minimal number of transpositions.
int length(const Permutation& a);

/// d(a,b) = |a^{-1} b|. Bi-translation-invariant metric on S_p.
int distance(const Permutation& a, const Permutation& b);

/// d(a,m) + d(m,b) == d(a,b).
bool is_geodesic(const Permutation& a, const Permutation& m, const Permutation& b);

long long catalan(int i);

/// Product over cycles of length d of (-1)^(d-1) * catalan(d-1).
long long mobius(const Permutation& a);
long long mobius(const CycleType& t);

/// Product over the cycles (i1..ik) of a of tr(A_{i1} ... A_{ik}).
std::complex<double> trace_sigma(const std::vector<Eigen::MatrixXcd>& mats, const Permutation& a);
Rational trace_sigma(const std::vector<RatMatrix>& mats, const Permutation& a);

/// Full descending cycle on p points: i -> i-1 cyclically (1-based view).
Permutation gamma_cycle(int p);

// --- Two-band index bookkeeping on {1..p} x {T,B}, flattened to 0-based
// points 0..2p-1 with the T band first.

enum class Band : uint8_t { T, B };

struct LabeledIndex {
    int i;      // 1-based position within the band
    Band band;
};

int flatten(const LabeledIndex& li, int p);                // 0-based point
LabeledIndex unflatten(int point, int p);

/// gamma: i^T -> (i-1)^T, i^B -> (i+1)^B (cyclic per band);
/// delta: i^T <-> i^B. Both in S_{2p}.
std::pair<Permutation, Permutation> build_gamma_delta(int p);

/// Doubled variants in S_{4p} for second-moment sums: the T band carries
/// points {1..2p}, the B band {2p+1..4p}; gamma-bar ascends cyclically within
/// each of the four p-blocks, delta-bar swaps the bands pointwise.
std::pair<Permutation, Permutation> build_bar_gamma_delta(int p);

/// Transposition (i^T, (i-1)^B) in S_{2p}, index arithmetic cyclic (i=1 wraps to p^B).
Permutation tau_transposition(int p, int i);

struct GeodesicAlpha {
    uint32_t subset;        // bit i-1 set iff i in A
    Permutation alpha;      // gamma * prod_{i in A} tau_i
};

struct GeodesicPair {
    uint32_t subset_a, subset_b;   // A subset of B
    Permutation alpha, beta;
};

/// All 2^p permutations gamma * prod_{i in A} tau_i, A over subsets of {1..p}.
std::vector<GeodesicAlpha> enumerate_geodesic_alphas(int p);

/// All 3^p nested pairs A ⊆ B ⊆ {1..p} with their (alpha, beta).
std::vector<GeodesicPair> enumerate_geodesic_pairs(int p);

/// d(g,a) + d(a,b) + d(b,d) - d(g,d). Non-negative and even; zero iff the
/// chain g -> a -> b -> d is a geodesic.
int excess(const Permutation& a, const Permutation& b,
           const Permutation& g, const Permutation& d);

}  // namespace haar

template <>
struct std::hash<haar::Permutation> {
    size_t operator()(const haar::Permutation& a) const {
        size_t h = 0x9e3779b97f4a7c15ULL;
        for (int v : a.images()) h = h * 1315423911u + static_cast<size_t>(v) + 1;
        return h;
    }
};
