#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "haar/errors.hpp"
#include "haar/partitions.hpp"
#include "haar/perm.hpp"
#include "haar/rational.hpp"
#include "haar/weingarten.hpp"

using namespace haar;

namespace {

std::vector<Permutation> all_perms(int p) {
    std::vector<int> img(p);
    std::iota(img.begin(), img.end(), 0);
    std::vector<Permutation> out;
    do {
        out.emplace_back(img);
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

// Character-side evaluation, written out independently of the table code:
// sum over partitions of chi / (hook product * content product).
Rational character_route(long n, int p, const CycleType& mu) {
    Rational acc(0);
    for (const auto& lam : partitions_of(p)) {
        if (lam.count() > n) continue;
        Integer denom = hook_product(lam) * content_product(lam, n);
        acc += Rational(Integer(static_cast<long>(character_sp(lam, mu)))) / Rational(denom);
    }
    return acc;
}

MonomialSpec abs2_pattern(long n, std::vector<int> rows, std::vector<int> cols) {
    // product of |U(rows[m], cols[m])|^2 factors
    MonomialSpec s;
    s.n = n;
    s.i = rows;
    s.j = cols;
    s.ip = std::move(rows);
    s.jp = std::move(cols);
    return s;
}

}  // namespace

TEST_CASE("order one: Wg is 1/n") {
    for (long n = 1; n <= 8; ++n) {
        CHECK(weingarten_exact(n, 1, CycleType({1})) == Rational(1, n));
    }
    CHECK(rat_str(weingarten_exact(7, 1, CycleType({1}))) == "1/7");
}

TEST_CASE("order two: closed forms 1/(n^2-1) and -1/(n(n^2-1))") {
    for (long n = 2; n <= 7; ++n) {
        Rational d(n * n - 1);
        CHECK(weingarten_exact(n, 2, CycleType({1, 1})) == 1 / d);
        CHECK(weingarten_exact(n, 2, CycleType({2})) == Rational(-1) / (n * d));
    }
    CHECK(rat_str(weingarten_exact(5, 2, CycleType({1, 1}))) == "1/24");
    CHECK(rat_str(weingarten_exact(5, 2, CycleType({2}))) == "-1/120");
    CHECK(rat_str(weingarten_exact(2, 2, CycleType({1, 1}))) == "1/3");
    CHECK(rat_str(weingarten_exact(2, 2, CycleType({2}))) == "-1/6");
}

TEST_CASE("order three: closed forms") {
    for (long n = 3; n <= 6; ++n) {
        Rational d(n * (n * n - 1) * (n * n - 4));
        CHECK(weingarten_exact(n, 3, CycleType({1, 1, 1})) == Rational(n * n - 2) / d);
        CHECK(weingarten_exact(n, 3, CycleType({2, 1})) == Rational(-n) / d);
        CHECK(weingarten_exact(n, 3, CycleType({3})) == Rational(2) / d);
    }
    CHECK(rat_str(weingarten_exact(3, 3, CycleType({1, 1, 1}))) == "7/120");
    CHECK(rat_str(weingarten_exact(3, 3, CycleType({2, 1}))) == "-1/40");
    CHECK(rat_str(weingarten_exact(3, 3, CycleType({3}))) == "1/60");
}

TEST_CASE("defining property: convolution inverse of sigma -> n^{#sigma}") {
    for (int p = 1; p <= 5; ++p) {
        auto perms = all_perms(p);
        for (long n : {static_cast<long>(p), static_cast<long>(p) + 1, static_cast<long>(p) + 3}) {
            const WgTable& wg = weingarten_table(n, p);
            for (const auto& sigma : perms) {
                Rational acc(0);
                for (const auto& tau : perms) {
                    acc += wg.at(sigma * tau.inverse()) * rat_pow(n, tau.cycle_count());
                }
                CHECK(acc == Rational(sigma.is_identity() ? 1 : 0));
            }
        }
    }
}

TEST_CASE("sum over the whole group collapses to 1/rising factorial") {
    for (int p = 1; p <= 6; ++p) {
        for (long n : {4L, 6L, 10L}) {
            const WgTable& wg = weingarten_table(n, p);
            Rational total(0);
            for (std::size_t c = 0; c < wg.types.size(); ++c) {
                total += Rational(static_cast<long>(conjugacy_class_size(wg.types[c]))) *
                         wg.at_class(static_cast<int>(c));
            }
            Rational expect(1);
            for (int j = 0; j < p; ++j) expect /= Rational(n + j);
            CHECK(total == expect);
        }
    }
}

TEST_CASE("table layout follows the partition list; lookups agree") {
    const WgTable& wg = weingarten_table(4, 4);
    CHECK(wg.types == partitions_of(4));
    for (const auto& a : all_perms(4)) {
        CycleType t = CycleType::of(a);
        CHECK(wg.at(a) == wg.at(t));
        CHECK(wg.at(a) == wg.at_class(partition_index(t)));
    }
    // cached: same object comes back
    CHECK(&weingarten_table(4, 4) == &wg);
}

TEST_CASE("Gram inversion agrees with the character formula when n >= p") {
    for (int p = 1; p <= 5; ++p) {
        for (long n : {static_cast<long>(p), static_cast<long>(p) + 2}) {
            const WgTable& wg = weingarten_table(n, p);
            for (std::size_t c = 0; c < wg.types.size(); ++c) {
                CHECK(wg.at_class(static_cast<int>(c)) == character_route(n, p, wg.types[c]));
            }
        }
    }
}

TEST_CASE("n < p: table is the convolution pseudo-inverse, G * W * G = G") {
    struct Case { int p; long n; };
    for (auto [p, n] : {Case{2, 1}, Case{3, 1}, Case{3, 2}, Case{4, 2}, Case{4, 3}}) {
        auto perms = all_perms(p);
        const WgTable& wg = weingarten_table(n, p);
        for (const auto& sigma : perms) {
            Rational acc(0);
            for (const auto& tau : perms) {
                Rational left = rat_pow(n, (sigma * tau.inverse()).cycle_count());
                for (const auto& rho : perms) {
                    acc += left * wg.at(tau * rho.inverse()) * rat_pow(n, rho.cycle_count());
                }
            }
            CHECK(acc == rat_pow(n, sigma.cycle_count()));
        }
    }
}

TEST_CASE("n = 1 tables: constant on the whole group") {
    // Only the one-row partition survives, so every class gets 1/(p! * p!/... )
    // p=2: 1/4 on both classes, p=3: 1/36 on all three.
    const WgTable& w2 = weingarten_table(1, 2);
    CHECK(w2.at(CycleType({1, 1})) == Rational(1, 4));
    CHECK(w2.at(CycleType({2})) == Rational(1, 4));
    const WgTable& w3 = weingarten_table(1, 3);
    for (std::size_t c = 0; c < w3.types.size(); ++c) {
        CHECK(w3.at_class(static_cast<int>(c)) == Rational(1, 36));
    }
}

TEST_CASE("small-dimension frozen values at n=2, p=3") {
    // Hand evaluation of the two surviving partitions [3] and [2,1]:
    // 1/(6*24) plus chi^{[2,1]}/(3*6) gives 17/144, 1/144, -7/144.
    CHECK(rat_str(weingarten_exact(2, 3, CycleType({1, 1, 1}))) == "17/144");
    CHECK(rat_str(weingarten_exact(2, 3, CycleType({2, 1}))) == "1/144");
    CHECK(rat_str(weingarten_exact(2, 3, CycleType({3}))) == "-7/144");
}

TEST_CASE("asymptotic leading term n^{-(p+|t|)} Mob(t)") {
    CHECK(weingarten_asymptotic(10, CycleType({2})) == Rational(-1, 1000));
    CHECK(weingarten_asymptotic(10, CycleType({1, 1})) == Rational(1, 100));
    CHECK(weingarten_asymptotic(2, CycleType({3})) == Rational(1, 16));

    // relative error falls like 1/n^2: doubling n shrinks it by about 4
    for (const auto& t : partitions_of(3)) {
        auto rel_err = [&](long n) {
            double exact = rat_double(weingarten_exact(n, 3, t));
            double lead = rat_double(weingarten_asymptotic(n, t));
            return std::abs(exact / lead - 1.0);
        };
        double r16 = rel_err(16), r32 = rel_err(32);
        CHECK(r16 > 0.0);
        CHECK(r32 * 3.4 < r16);
        CHECK(r32 * 4.6 > r16);
    }
    for (const auto& t : partitions_of(4)) {
        auto rel_err = [&](long n) {
            double exact = rat_double(weingarten_exact(n, 4, t));
            double lead = rat_double(weingarten_asymptotic(n, t));
            return std::abs(exact / lead - 1.0);
        };
        CHECK(rel_err(32) * 2 < rel_err(16));
    }
}

TEST_CASE("characters: dimensions, sign row, trivial row") {
    for (int p = 1; p <= 6; ++p) {
        long long fact = 1;
        for (int j = 2; j <= p; ++j) fact *= j;
        for (const auto& mu : partitions_of(p)) {
            CHECK(character_sp(CycleType(std::vector<int>{p}), mu) == 1);
            int sign = (p - mu.count()) % 2 == 0 ? 1 : -1;
            CHECK(character_sp(CycleType(std::vector<int>(p, 1)), mu) == sign);
        }
        for (const auto& lam : partitions_of(p)) {
            Integer dim_times_hooks =
                Integer(static_cast<long>(character_sp(lam, CycleType(std::vector<int>(p, 1))))) *
                hook_product(lam);
            CHECK(dim_times_hooks == Integer(static_cast<long>(fact)));
        }
    }
}

TEST_CASE("characters: first orthogonality sum |C| chi chi' = p! delta") {
    for (int p = 2; p <= 6; ++p) {
        long long fact = 1;
        for (int j = 2; j <= p; ++j) fact *= j;
        const auto& parts = partitions_of(p);
        for (const auto& lam : parts) {
            for (const auto& nu : parts) {
                long long acc = 0;
                for (const auto& mu : parts) {
                    acc += conjugacy_class_size(mu) * character_sp(lam, mu) * character_sp(nu, mu);
                }
                CHECK(acc == (lam == nu ? fact : 0));
            }
        }
    }
}

TEST_CASE("characters: frozen rows") {
    CHECK(character_sp(CycleType({2, 1}), CycleType({1, 1, 1})) == 2);
    CHECK(character_sp(CycleType({2, 1}), CycleType({2, 1})) == 0);
    CHECK(character_sp(CycleType({2, 1}), CycleType({3})) == -1);

    CHECK(character_sp(CycleType({2, 2}), CycleType({1, 1, 1, 1})) == 2);
    CHECK(character_sp(CycleType({2, 2}), CycleType({2, 1, 1})) == 0);
    CHECK(character_sp(CycleType({2, 2}), CycleType({2, 2})) == 2);
    CHECK(character_sp(CycleType({2, 2}), CycleType({3, 1})) == -1);
    CHECK(character_sp(CycleType({2, 2}), CycleType({4})) == 0);
}

TEST_CASE("hook and content products") {
    CHECK(hook_product(CycleType({2, 2})) == 12);
    CHECK(hook_product(CycleType({3, 1})) == 8);
    CHECK(hook_product(CycleType({4})) == 24);
    CHECK(hook_product(CycleType({1, 1, 1})) == 6);
    CHECK(content_product(CycleType({2}), 5) == 30);        // n(n+1)
    CHECK(content_product(CycleType({1, 1}), 5) == 20);     // n(n-1)
    CHECK(content_product(CycleType({2, 2}), 3) == 72);     // n^2(n^2-1)
    CHECK(content_product(CycleType({3}), 1) == 6);
}

TEST_CASE("monomials, order one: every |U(a,b)|^2 averages to 1/n") {
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            CHECK(monomial_integral(abs2_pattern(3, {a}, {b})) == Rational(1, 3));
}

TEST_CASE("monomials, order two: distinct rows and columns") {
    // both indices distinct: only the identity pairing survives, value Wg(n, id)
    CHECK(rat_str(monomial_integral(abs2_pattern(2, {0, 1}, {0, 1}))) == "1/3");
    CHECK(monomial_integral(abs2_pattern(3, {0, 1}, {0, 2})) == Rational(1, 8));
    CHECK(monomial_integral(abs2_pattern(4, {2, 3}, {1, 0})) == Rational(1, 15));
}

TEST_CASE("monomials, order two: shared row or column") {
    // two entries from one row: 1/(n(n+1)), the uniform-simplex moment E[x y]
    CHECK(rat_str(monomial_integral(abs2_pattern(2, {0, 0}, {0, 1}))) == "1/6");
    CHECK(monomial_integral(abs2_pattern(3, {0, 0}, {0, 1})) == Rational(1, 12));
    CHECK(monomial_integral(abs2_pattern(3, {1, 2}, {0, 0})) == Rational(1, 12));
    // fourth power of one entry: 2/(n(n+1)) = E[x^2]
    CHECK(monomial_integral(abs2_pattern(2, {0, 0}, {0, 0})) == Rational(1, 3));
    CHECK(monomial_integral(abs2_pattern(3, {0, 0}, {0, 0})) == Rational(1, 6));
    // n=1 sanity: powers of a phase have modulus one
    CHECK(monomial_integral(abs2_pattern(1, {0, 0}, {0, 0})) == Rational(1));
    CHECK(monomial_integral(abs2_pattern(1, {0, 0, 0}, {0, 0, 0})) == Rational(1));
}

TEST_CASE("monomials: zero patterns") {
    MonomialSpec unbalanced;
    unbalanced.n = 2;
    unbalanced.i = {0};
    unbalanced.j = {0};
    CHECK(monomial_integral(unbalanced) == Rational(0));

    MonomialSpec lopsided;
    lopsided.n = 3;
    lopsided.i = {0};
    lopsided.j = {0};
    lopsided.ip = {0, 1};
    lopsided.jp = {0, 1};
    CHECK(monomial_integral(lopsided) == Rational(0));

    MonomialSpec row_mismatch;   // U(0,0) conj(U(1,0))
    row_mismatch.n = 2;
    row_mismatch.i = {0};
    row_mismatch.j = {0};
    row_mismatch.ip = {1};
    row_mismatch.jp = {0};
    CHECK(monomial_integral(row_mismatch) == Rational(0));

    MonomialSpec col_mismatch;   // U(0,0) U(0,1) conj(U(0,0))^2
    col_mismatch.n = 2;
    col_mismatch.i = {0, 0};
    col_mismatch.j = {0, 1};
    col_mismatch.ip = {0, 0};
    col_mismatch.jp = {0, 0};
    CHECK(monomial_integral(col_mismatch) == Rational(0));
}

TEST_CASE("monomials: empty product is one") {
    MonomialSpec empty;
    empty.n = 3;
    CHECK(monomial_integral(empty) == Rational(1));
}

TEST_CASE("monomials: row normalization sums to one") {
    // sum_j |U(r,j)|^2 = 1, so summing the pattern over all column choices gives 1
    for (long n = 2; n <= 4; ++n) {
        Rational total(0);
        for (int j1 = 0; j1 < n; ++j1)
            for (int j2 = 0; j2 < n; ++j2)
                total += monomial_integral(abs2_pattern(n, {0, 1}, {j1, j2}));
        CHECK(total == Rational(1));
    }
    Rational total3(0);
    for (int j1 = 0; j1 < 2; ++j1)
        for (int j2 = 0; j2 < 2; ++j2)
            for (int j3 = 0; j3 < 2; ++j3)
                total3 += monomial_integral(abs2_pattern(2, {0, 1, 0}, {j1, j2, j3}));
    CHECK(total3 == Rational(1));
}

TEST_CASE("monomials: invariance under relabeling and factor order") {
    // left/right translation invariance: permute all row labels, all column labels
    Rational base = monomial_integral(abs2_pattern(3, {0, 1}, {0, 1}));
    CHECK(base == monomial_integral(abs2_pattern(3, {2, 0}, {1, 2})));
    CHECK(base == monomial_integral(abs2_pattern(3, {1, 2}, {2, 0})));

    // commutativity: reordering the factors changes nothing
    Rational shared = monomial_integral(abs2_pattern(3, {0, 0, 1}, {0, 1, 2}));
    CHECK(shared == monomial_integral(abs2_pattern(3, {0, 1, 0}, {1, 2, 0})));
    CHECK(shared == monomial_integral(abs2_pattern(3, {1, 0, 0}, {2, 1, 0})));

    // swapping the plain and conjugated sides conjugates the (real) value
    MonomialSpec fwd;
    fwd.n = 3;
    fwd.i = {0, 0};
    fwd.j = {0, 1};
    fwd.ip = {0, 0};
    fwd.jp = {1, 0};
    MonomialSpec bwd;
    bwd.n = 3;
    bwd.i = fwd.ip;
    bwd.j = fwd.jp;
    bwd.ip = fwd.i;
    bwd.jp = fwd.j;
    CHECK(monomial_integral(fwd) == monomial_integral(bwd));
}

TEST_CASE("budgets and argument validation") {
    CHECK_THROWS_AS(weingarten_table(3, 9), BudgetError);
    CHECK_THROWS_AS(weingarten_table(0, 2), std::invalid_argument);

    MonomialSpec big = abs2_pattern(2, {0, 1, 0, 1, 0, 1, 0}, {0, 1, 0, 1, 0, 1, 0});
    CHECK_THROWS_AS(monomial_integral(big), BudgetError);

    MonomialSpec ragged;
    ragged.n = 2;
    ragged.i = {0, 1};
    ragged.j = {0};
    ragged.ip = {0, 1};
    ragged.jp = {0, 1};
    CHECK_THROWS_AS(monomial_integral(ragged), std::invalid_argument);

    MonomialSpec oob = abs2_pattern(2, {0, 2}, {0, 1});
    CHECK_THROWS_AS(monomial_integral(oob), std::invalid_argument);

    // exit-code mapping catches these as runtime errors
    CHECK_THROWS_AS(weingarten_table(3, 9), std::runtime_error);
}
