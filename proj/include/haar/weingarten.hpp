#pragma once

#include <map>
#include <vector>

#include "haar/perm.hpp"
#include "haar/rational.hpp"

namespace haar {

/// Exact Weingarten values for one (dimension n, order p), indexed by cycle
/// type. For n >= p the values invert the class-algebra Gram matrix of
/// sigma -> n^{#sigma}; for n < p they come from the character sum truncated
/// to partitions with at most n rows (pseudo-inverse).
struct WgTable {
    long n = 0;
    int p = 0;
    std::vector<CycleType> types;     // partitions_of(p) order
    std::vector<Rational> values;

    const Rational& at_class(int idx) const { return values[idx]; }
    const Rational& at(const CycleType& t) const;
    const Rational& at(const Permutation& a) const;
};

/// Cached shared table; safe for concurrent readers.
const WgTable& weingarten_table(long n, int p);

Rational weingarten_exact(long n, int p, const CycleType& t);
Rational weingarten_exact(long n, const Permutation& a);

/// Leading term n^{-(p+|t|)} * Mob(t) of the large-n expansion, as an exact rational.
Rational weingarten_asymptotic(long n, const CycleType& t);
Rational weingarten_asymptotic(long n, const Permutation& a);

/// Entry pattern of a joint moment of Haar-unitary matrix entries: the plain
/// factors are U(i_m, j_m) and the conjugated factors are conj(U(ip_m, jp_m)).
/// Indices are 0-based and must lie in [0, n).
struct MonomialSpec {
    long n = 0;
    std::vector<int> i, j;
    std::vector<int> ip, jp;
};

/// Exact value of the mean of the entry product. Zero when the plain and
/// conjugated degrees differ; otherwise the Weingarten double sum over S_p^2.
Rational monomial_integral(const MonomialSpec& spec);

}  // namespace haar
