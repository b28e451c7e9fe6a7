#include "haar/weingarten.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "haar/errors.hpp"
#include "haar/partitions.hpp"

namespace haar {

const Rational& WgTable::at(const CycleType& t) const {
    if (t.sum() != p) throw std::invalid_argument("WgTable::at: wrong partition size");
    return values[partition_index(t)];
}

const Rational& WgTable::at(const Permutation& a) const { return at(CycleType::of(a)); }

// Solve M w = rhs by exact Gaussian elimination with partial (nonzero) pivoting.
static std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> M,
                                         std::vector<Rational> rhs) {
    const int d = static_cast<int>(M.size());
    for (int col = 0; col < d; ++col) {
        int piv = -1;
        for (int r = col; r < d; ++r)
            if (M[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::logic_error("solve_exact: singular matrix");
        std::swap(M[col], M[piv]);
        std::swap(rhs[col], rhs[piv]);
        Rational inv = 1 / M[col][col];
        for (int c = col; c < d; ++c) M[col][c] *= inv;
        rhs[col] *= inv;
        for (int r = 0; r < d; ++r) {
            if (r == col || M[r][col] == 0) continue;
            Rational f = M[r][col];
            for (int c = col; c < d; ++c) M[r][c] -= f * M[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    return rhs;
}

static void fill_gram_route(WgTable& t) {
    const int p = t.p;
    const auto& parts = t.types;
    const int nc = static_cast<int>(parts.size());

    std::map<CycleType, int> type_idx;
    std::vector<Permutation> reps;
    for (int i = 0; i < nc; ++i) {
        type_idx[parts[i]] = i;
        reps.push_back(canonical_of_type(parts[i]));
    }

    // M[lam][mu] = sum over rho in class mu of n^{#(rho^{-1} rep_lam)}
    std::vector<std::vector<Rational>> M(nc, std::vector<Rational>(nc, Rational(0)));
    std::vector<int> img(p);
    std::iota(img.begin(), img.end(), 0);
    do {
        Permutation rho{img};
        int mu = type_idx.at(CycleType::of(rho));
        Permutation rho_inv = rho.inverse();
        for (int lam = 0; lam < nc; ++lam) {
            int cnt = (rho_inv * reps[lam]).cycle_count();
            M[lam][mu] += rat_pow(t.n, cnt);
        }
    } while (std::next_permutation(img.begin(), img.end()));

    std::vector<Rational> rhs(nc, Rational(0));
    rhs[type_idx.at(CycleType(std::vector<int>(p, 1)))] = 1;  // delta at the identity class
    t.values = solve_exact(std::move(M), std::move(rhs));
}

static void fill_character_route(WgTable& t) {
    const auto& parts = t.types;
    t.values.assign(parts.size(), Rational(0));
    for (size_t mu = 0; mu < parts.size(); ++mu) {
        Rational acc(0);
        for (const auto& lam : parts) {
            if (lam.count() > t.n) continue;  // pseudo-inverse truncation
            Integer den = hook_product(lam) * content_product(lam, t.n);
            Rational term(Integer(static_cast<long>(character_sp(lam, parts[mu]))), den);
            term.canonicalize();
            acc += term;
        }
        t.values[mu] = acc;
    }
}

const WgTable& weingarten_table(long n, int p) {
    if (n < 1) throw std::invalid_argument("weingarten_table: dimension must be positive");
    if (p < 0 || p > 8) throw BudgetError("weingarten_table: order beyond table budget (p <= 8)");
    static std::mutex mu;
    static std::map<std::pair<long, int>, std::unique_ptr<const WgTable>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(n, p);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;

    auto t = std::make_unique<WgTable>();
    t->n = n;
    t->p = p;
    t->types = partitions_of(p);
    if (n >= p)
        fill_gram_route(*t);
    else
        fill_character_route(*t);
    const WgTable& ref = *t;
    cache.emplace(key, std::move(t));
    return ref;
}

Rational weingarten_exact(long n, int p, const CycleType& t) {
    return weingarten_table(n, p).at(t);
}

Rational weingarten_exact(long n, const Permutation& a) {
    return weingarten_table(n, a.size()).at(a);
}

Rational weingarten_asymptotic(long n, const CycleType& t) {
    const int p = t.sum();
    const int len = p - t.count();
    return rat_pow(n, -(p + len)) * Rational(static_cast<long>(mobius(t)));
}

Rational weingarten_asymptotic(long n, const Permutation& a) {
    return weingarten_asymptotic(n, CycleType::of(a));
}

Rational monomial_integral(const MonomialSpec& spec) {
    if (spec.i.size() != spec.j.size() || spec.ip.size() != spec.jp.size())
        throw std::invalid_argument("monomial_integral: row/column lists must pair up");
    for (int v : spec.i)
        if (v < 0 || v >= spec.n) throw std::invalid_argument("monomial_integral: index out of range");
    for (int v : spec.j)
        if (v < 0 || v >= spec.n) throw std::invalid_argument("monomial_integral: index out of range");
    for (int v : spec.ip)
        if (v < 0 || v >= spec.n) throw std::invalid_argument("monomial_integral: index out of range");
    for (int v : spec.jp)
        if (v < 0 || v >= spec.n) throw std::invalid_argument("monomial_integral: index out of range");

    if (spec.i.size() != spec.ip.size()) return Rational(0);  // unbalanced degrees average to zero
    const int p = static_cast<int>(spec.i.size());
    if (p == 0) return Rational(1);
    if (p > 6) throw BudgetError("monomial_integral: order beyond enumeration budget (p <= 6)");

    const WgTable& wg = weingarten_table(spec.n, p);

    std::vector<int> s(p), tt(p);
    std::iota(s.begin(), s.end(), 0);
    Rational acc(0);
    do {
        bool rows_ok = true;
        for (int m = 0; m < p && rows_ok; ++m) rows_ok = spec.i[m] == spec.ip[s[m]];
        if (!rows_ok) continue;
        std::iota(tt.begin(), tt.end(), 0);
        do {
            bool cols_ok = true;
            for (int m = 0; m < p && cols_ok; ++m) cols_ok = spec.j[m] == spec.jp[tt[m]];
            if (!cols_ok) continue;
            Permutation sigma{std::vector<int>(s)};
            Permutation tau{std::vector<int>(tt)};
            acc += wg.at(tau * sigma.inverse());
        } while (std::next_permutation(tt.begin(), tt.end()));
    } while (std::next_permutation(s.begin(), s.end()));
    return acc;
}

}  // namespace haar
