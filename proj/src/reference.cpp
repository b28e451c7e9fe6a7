#include "haar/reference.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "haar/errors.hpp"
#include "haar/perm.hpp"
#include "haar/weingarten.hpp"

namespace haar {

namespace {

std::vector<Permutation> symmetric_group(int p) {
    std::vector<int> img(static_cast<size_t>(p));
    for (int i = 0; i < p; ++i) img[static_cast<size_t>(i)] = i;
    std::vector<Permutation> out;
    do out.emplace_back(img);
    while (std::next_permutation(img.begin(), img.end()));
    return out;
}

}  // namespace

Rational reference_moment_rotated(long n, long k, int p, const RatMatrix& x) {
    if (n < 1 || k < 1 || p < 1) throw std::invalid_argument("reference_moment_rotated: bad parameters");
    if (p > 4) throw BudgetError("reference_moment_rotated: p <= 4");
    if (x.rows != n * k || x.cols != n * k)
        throw std::invalid_argument("reference_moment_rotated: X must be nk x nk");

    Permutation ginv = gamma_cycle(p).inverse();
    std::vector<RatMatrix> xs(static_cast<size_t>(p), x);
    Rational total(0);
    for (const Permutation& a : symmetric_group(p))
        for (const Permutation& b : symmetric_group(p))
            total += rat_pow(k, a.cycle_count()) * rat_pow(n, (ginv * a).cycle_count()) *
                     trace_sigma(xs, b) * weingarten_exact(n * k, a * b.inverse());
    return total;
}

Rational reference_moment_independent(long n, long k, int p) {
    if (n < 1 || k < 1 || p < 1)
        throw std::invalid_argument("reference_moment_independent: bad parameters");
    if (p > 3) throw BudgetError("reference_moment_independent: p <= 3");

    Permutation ginv = gamma_cycle(p).inverse();
    std::vector<Permutation> sp = symmetric_group(p);
    Rational total(0);
    for (const Permutation& au : sp)
        for (const Permutation& bu : sp)
            for (const Permutation& av : sp)
                for (const Permutation& bv : sp)
                    total += rat_pow(k, au.cycle_count() + av.cycle_count()) *
                             rat_pow(n, (ginv * au).cycle_count() + (ginv * av).cycle_count() +
                                            (bu.inverse() * bv).cycle_count() - p) *
                             weingarten_exact(n * k, au * bu.inverse()) *
                             weingarten_exact(n * k, av * bv.inverse());
    return total;
}

Rational reference_moment_conjugate(long n, long k, int p) {
    if (n < 1 || k < 1 || p < 1)
        throw std::invalid_argument("reference_moment_conjugate: bad parameters");
    if (p > 2) throw BudgetError("reference_moment_conjugate: p <= 2");

    auto [gam, del] = build_gamma_delta(p);
    Permutation ginv = gam.inverse();
    std::vector<Permutation> s2p = symmetric_group(2 * p);
    Rational total(0);
    for (const Permutation& a : s2p)
        for (const Permutation& b : s2p)
            total += rat_pow(k, a.cycle_count()) *
                     rat_pow(n, (ginv * a).cycle_count() + (del * b).cycle_count() - p) *
                     weingarten_exact(n * k, a * b.inverse());
    return total;
}

}  // namespace haar
