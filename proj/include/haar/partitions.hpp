#pragma once

#include <vector>

#include "haar/perm.hpp"

namespace haar {

/// All partitions of p, in descending lexicographic order ([p] first, [1^p] last).
const std::vector<CycleType>& partitions_of(int p);

/// Position of t in partitions_of(t.sum()).
int partition_index(const CycleType& t);

/// Number of elements of S_p with cycle type t: p! / prod_j (j^{m_j} m_j!).
long long conjugacy_class_size(const CycleType& t);

/// A concrete permutation with the given cycle type (consecutive cycles).
Permutation canonical_of_type(const CycleType& t);

/// Product of hook lengths of the Young diagram of lambda.
Integer hook_product(const CycleType& lambda);

/// prod over cells (r,c), 0-based, of (n + c - r).
Integer content_product(const CycleType& lambda, long n);

/// Irreducible S_p character chi^lambda evaluated on class mu
/// (border-strip recursion over beta-sets).
long long character_sp(const CycleType& lambda, const CycleType& mu);

}  // namespace haar
