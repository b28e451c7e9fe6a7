#include "haar/channels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>

#include "haar/errors.hpp"
#include "haar/group_tables.hpp"
#include "haar/perm.hpp"
#include "haar/rng.hpp"
#include "haar/weingarten.hpp"

namespace haar {

namespace {

using cd = std::complex<double>;

void require_unitary(const Eigen::MatrixXcd& u, long dim, const char* who) {
    if (u.rows() != dim || u.cols() != dim)
        throw std::invalid_argument(std::string(who) + ": unitary has the wrong size");
    if (unitarity_residual(u) > 1e-10)
        throw ValidationError(std::string(who) + ": matrix is not unitary within 1e-10");
}

Eigen::MatrixXcd hermitized(const Eigen::MatrixXcd& z) { return (z + z.adjoint()) / 2.0; }

}  // namespace

std::string model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::rotated: return "rotated";
        case ModelKind::independent: return "independent-product";
        case ModelKind::conjugate: return "conjugate-product";
        case ModelKind::generalized: return "generalized-t";
    }
    throw std::invalid_argument("model_kind_name: unknown kind");
}

ModelKind model_kind_parse(const std::string& name) {
    if (name == "rotated") return ModelKind::rotated;
    if (name == "independent-product" || name == "independent") return ModelKind::independent;
    if (name == "conjugate-product" || name == "conjugate") return ModelKind::conjugate;
    if (name == "generalized-t" || name == "generalized") return ModelKind::generalized;
    throw std::invalid_argument("unknown channel model: " + name);
}

void validate_model(const ChannelModel& m) {
    if (m.n < 1 || m.k < 1) throw std::invalid_argument("channel model: n, k must be >= 1");
    if (m.kind == ModelKind::generalized) generalized_rank(m.n, m.k, m.t);
}

std::vector<Eigen::MatrixXcd> kraus_from_unitary(const Eigen::MatrixXcd& u, long n, long k) {
    require_unitary(u, n * k, "kraus_from_unitary");
    std::vector<Eigen::MatrixXcd> ls;
    ls.reserve(static_cast<size_t>(k));
    for (long i = 0; i < k; ++i) {
        Eigen::MatrixXcd l(n, n);
        for (long a = 0; a < n; ++a)
            for (long b = 0; b < n; ++b) l(a, b) = u(a * k + i, b * k);
        ls.push_back(std::move(l));
    }
    return ls;
}

Eigen::MatrixXcd stinespring_apply(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& x,
                                   long n, long k) {
    require_unitary(u, n * k, "stinespring_apply");
    if (x.rows() != n || x.cols() != n)
        throw std::invalid_argument("stinespring_apply: state must be n x n");
    if ((x - x.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
        throw ValidationError("stinespring_apply: state is not Hermitian");
    if (std::abs(x.trace() - cd(1.0)) > 1e-9)
        throw ValidationError("stinespring_apply: state trace is not 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitized(x));
    if (es.eigenvalues().minCoeff() < -1e-9)
        throw ValidationError("stinespring_apply: state is not positive semidefinite");

    Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(n, n);
    for (const Eigen::MatrixXcd& l : kraus_from_unitary(u, n, k)) y += l * x * l.adjoint();
    return hermitized(y);
}

namespace {

// The n^2 x k^2 matrix A with the output Z = A A*.
Eigen::MatrixXcd pair_matrix(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v,
                             long n, long k, const std::vector<long>& columns) {
    long nk = n * k;
    require_unitary(u, nk, "pair channel");
    require_unitary(v, nk, "pair channel");
    if (columns.empty()) throw std::invalid_argument("pair channel: no input columns");
    for (long c : columns)
        if (c < 0 || c >= nk) throw std::invalid_argument("pair channel: column out of range");
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n * n, k * k);
    for (long i : columns)
        for (long r = 0; r < n; ++r)
            for (long s = 0; s < k; ++s) {
                cd ur = u(r * k + s, i);
                for (long b = 0; b < n; ++b)
                    for (long t = 0; t < k; ++t) a(r * n + b, s * k + t) += ur * v(b * k + t, i);
            }
    return a / std::sqrt(static_cast<double>(columns.size()));
}

}  // namespace

Eigen::MatrixXcd pair_output(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v,
                             long n, long k, const std::vector<long>& columns) {
    Eigen::MatrixXcd a = pair_matrix(u, v, n, k, columns);
    return a * a.adjoint();
}

Eigen::MatrixXcd pair_gram(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v,
                           long n, long k, const std::vector<long>& columns) {
    Eigen::MatrixXcd a = pair_matrix(u, v, n, k, columns);
    return a.adjoint() * a;
}

std::vector<long> bell_input_columns(long n, long k) {
    std::vector<long> cols(static_cast<size_t>(n));
    for (long a = 0; a < n; ++a) cols[static_cast<size_t>(a)] = a * k;
    return cols;
}

double pair_bell_overlap(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v,
                         long n, long k, const std::vector<long>& columns) {
    Eigen::MatrixXcd a = pair_matrix(u, v, n, k, columns);
    Eigen::VectorXcd omega = Eigen::VectorXcd::Zero(n * n);
    for (long r = 0; r < n; ++r) omega(r * n + r) = cd(1.0 / std::sqrt(static_cast<double>(n)));
    return (a.adjoint() * omega).squaredNorm();
}

long generalized_rank(long n, long k, double t) {
    if (n < 1 || k < 1) throw std::invalid_argument("generalized_rank: n, k must be >= 1");
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("generalized_rank: t must lie in (0,1)");
    long rank = std::lround(t * static_cast<double>(n) * static_cast<double>(k));
    if (rank < 1 || rank > n * k)
        throw std::invalid_argument("generalized_rank: round(t n k) falls outside [1, nk]");
    return rank;
}

Eigen::MatrixXcd generalized_apply(const Eigen::MatrixXcd& u, long n, long k, double t) {
    long rank = generalized_rank(n, k, t);
    std::vector<long> cols(static_cast<size_t>(rank));
    for (long i = 0; i < rank; ++i) cols[static_cast<size_t>(i)] = i;
    return hermitized(pair_output(u, u.conjugate(), n, k, cols));
}

std::pair<double, bool> hayden_bound(const Eigen::MatrixXcd& z, long n, double t) {
    if (z.rows() != n * n || z.cols() != n * n)
        throw std::invalid_argument("hayden_bound: state must be n^2 x n^2");
    if (std::abs(z.trace() - cd(1.0)) > 1e-8)
        throw ValidationError("hayden_bound: state trace is not 1");
    if ((z - z.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
        throw ValidationError("hayden_bound: state is not Hermitian");
    cd overlap(0);
    for (long a = 0; a < n; ++a)
        for (long c = 0; c < n; ++c) overlap += z(a * n + a, c * n + c);
    double value = overlap.real() / static_cast<double>(n);
    return {value, value >= t - 1e-10};
}

// ---- exact moment kernels ----

namespace {

std::vector<Rational> trace_words_by_class(const GroupTable& g, const RatMatrix& x, int p) {
    std::vector<Rational> tr_pow(static_cast<size_t>(p) + 1, Rational(0));
    RatMatrix m = x;
    tr_pow[1] = rat_mat_trace(m);
    for (int j = 2; j <= p; ++j) {
        m = rat_mat_mul(m, x);
        tr_pow[static_cast<size_t>(j)] = rat_mat_trace(m);
    }
    std::vector<Rational> out(g.classes.size(), Rational(1));
    for (size_t c = 0; c < g.classes.size(); ++c)
        for (int part : g.classes[c].parts) out[c] *= tr_pow[static_cast<size_t>(part)];
    return out;
}

std::vector<Rational> wg_by_class(const GroupTable& g, long dim, int p) {
    std::vector<Rational> out(g.classes.size());
    for (size_t c = 0; c < g.classes.size(); ++c) out[c] = weingarten_exact(dim, p, g.classes[c]);
    return out;
}

std::vector<Rational> int_powers(long base, int max_e) {
    std::vector<Rational> out(static_cast<size_t>(max_e) + 1);
    out[0] = Rational(1);
    for (int e = 1; e <= max_e; ++e) out[static_cast<size_t>(e)] = out[static_cast<size_t>(e - 1)] * base;
    return out;
}

}  // namespace

Rational exact_moment_rotated(long n, long k, int p, const RatMatrix& x) {
    if (n < 1 || k < 1 || p < 1) throw std::invalid_argument("exact_moment_rotated: bad parameters");
    if (p > GroupTable::kMaxTabledPoints)
        throw BudgetError("exact_moment_rotated: p exceeds the S_6 table budget");
    if (x.rows != n * k || x.cols != n * k)
        throw std::invalid_argument("exact_moment_rotated: X must be nk x nk");

    auto g = GroupTable::get(p);
    const int order = g->order, nc = static_cast<int>(g->classes.size());
    const int giv = g->inv[g->index_of(gamma_cycle(p))];

    std::vector<int> ka(order), na(order);
    for (int a = 0; a < order; ++a) {
        ka[a] = g->cycle_count_tab[a];
        na[a] = g->cycle_count_tab[g->compose(giv, a)];
    }

    const size_t nbuck = static_cast<size_t>(p) * p * nc * nc;
    std::vector<long long> counts(nbuck, 0);
#pragma omp parallel
    {
        std::vector<long long> local(nbuck, 0);
#pragma omp for schedule(static)
        for (int a = 0; a < order; ++a) {
            size_t base = (static_cast<size_t>(ka[a] - 1) * p + (na[a] - 1)) * nc * nc;
            for (int b = 0; b < order; ++b)
                ++local[base + static_cast<size_t>(g->class_id[b]) * nc +
                        g->class_id[g->compose(a, g->inv[b])]];
        }
#pragma omp critical
        for (size_t i = 0; i < nbuck; ++i) counts[i] += local[i];
    }

    std::vector<Rational> trx = trace_words_by_class(*g, x, p);
    std::vector<Rational> wg = wg_by_class(*g, n * k, p);
    std::vector<Rational> kp = int_powers(k, p), np = int_powers(n, p);

    Rational total(0);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            for (int cb = 0; cb < nc; ++cb)
                for (int cw = 0; cw < nc; ++cw) {
                    long long c = counts[(static_cast<size_t>(i) * p + j) * nc * nc +
                                         static_cast<size_t>(cb) * nc + cw];
                    if (c)
                        total += Rational(static_cast<long>(c)) * kp[static_cast<size_t>(i) + 1] *
                                 np[static_cast<size_t>(j) + 1] * trx[static_cast<size_t>(cb)] *
                                 wg[static_cast<size_t>(cw)];
                }
    return total;
}

Rational exact_moment_rotated_rank_one(long n, long k, int p) {
    if (n < 1 || k < 1 || p < 1)
        throw std::invalid_argument("exact_moment_rotated_rank_one: bad parameters");
    if (p > 8) throw BudgetError("exact_moment_rotated_rank_one: p exceeds the table budget");

    Permutation ginv = gamma_cycle(p).inverse();
    std::vector<int> img(static_cast<size_t>(p));
    for (int i = 0; i < p; ++i) img[static_cast<size_t>(i)] = i;
    Rational sum(0);
    do {
        Permutation a(img);
        sum += rat_pow(k, a.cycle_count()) * rat_pow(n, (ginv * a).cycle_count());
    } while (std::next_permutation(img.begin(), img.end()));

    Rational denom(1);
    for (long j = 0; j < p; ++j) denom *= Rational(n * k + j);
    return sum / denom;
}

Rational exact_moment_independent(long n, long k, int p) {
    if (n < 1 || k < 1 || p < 1)
        throw std::invalid_argument("exact_moment_independent: bad parameters");
    if (p > GroupTable::kMaxTabledPoints)
        throw BudgetError("exact_moment_independent: p exceeds the S_6 table budget");

    auto g = GroupTable::get(p);
    const int order = g->order, nc = static_cast<int>(g->classes.size());
    const int giv = g->inv[g->index_of(gamma_cycle(p))];

    std::vector<int> ka(order), na(order);
    for (int a = 0; a < order; ++a) {
        ka[a] = g->cycle_count_tab[a];
        na[a] = g->cycle_count_tab[g->compose(giv, a)];
    }
    std::vector<Rational> wg = wg_by_class(*g, n * k, p);
    std::vector<Rational> kp = int_powers(k, p), np = int_powers(n, p);

    // one-channel factor h(beta) = sum_alpha k^{#alpha} n^{#(gamma^-1 alpha)}
    // Wg(nk, alpha beta^-1); not a class function of beta, so tabulate all of
    // them and couple the two factors through #(beta_U^-1 beta_V)
    std::vector<Rational> h(static_cast<size_t>(order), Rational(0));
#pragma omp parallel for schedule(static)
    for (int b = 0; b < order; ++b) {
        std::vector<long long> cnt(static_cast<size_t>(p) * p * nc, 0);
        int bi = g->inv[b];
        for (int a = 0; a < order; ++a)
            ++cnt[(static_cast<size_t>(ka[a] - 1) * p + (na[a] - 1)) * nc +
                  g->class_id[g->compose(a, bi)]];
        Rational hb(0);
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j)
                for (int c = 0; c < nc; ++c) {
                    long long cc = cnt[(static_cast<size_t>(i) * p + j) * nc + c];
                    if (cc)
                        hb += Rational(static_cast<long>(cc)) * kp[static_cast<size_t>(i) + 1] *
                              np[static_cast<size_t>(j) + 1] * wg[static_cast<size_t>(c)];
                }
        h[static_cast<size_t>(b)] = hb;
    }

    std::vector<Rational> nexp(static_cast<size_t>(p) + 1);
    for (int c = 1; c <= p; ++c) nexp[static_cast<size_t>(c)] = rat_pow(n, c - p);

    Rational total(0);
#pragma omp parallel
    {
        Rational part(0);
#pragma omp for schedule(static)
        for (int bu = 0; bu < order; ++bu) {
            int bui = g->inv[bu];
            Rational row(0);
            for (int bv = 0; bv < order; ++bv)
                row += nexp[g->cycle_count_tab[g->compose(bui, bv)]] * h[static_cast<size_t>(bv)];
            part += h[static_cast<size_t>(bu)] * row;
        }
#pragma omp critical
        total += part;
    }
    return total;
}

namespace {

// Shared kernel of the conjugate-pair sums: over S_m^2 with the given
// reference permutations, sum k^{#alpha} n^{#(ref_g^-1 alpha) + #(ref_d beta)
// + shift} Wg(nk, alpha beta^-1).
Rational banded_pair_sum(long n, long k, int m, const Permutation& ref_g, const Permutation& ref_d,
                         int shift) {
    auto g = GroupTable::get(m);
    const int order = g->order, nc = static_cast<int>(g->classes.size());
    const int giv = g->inv[g->index_of(ref_g)];
    const int di = g->index_of(ref_d);

    std::vector<int> ka(order), ga(order), db(order);
    for (int a = 0; a < order; ++a) {
        ka[a] = g->cycle_count_tab[a];
        ga[a] = g->cycle_count_tab[g->compose(giv, a)];
        db[a] = g->cycle_count_tab[g->compose(di, a)];
    }
    std::vector<Rational> wg = wg_by_class(*g, n * k, m);

    const size_t nbuck = static_cast<size_t>(m) * m * m * nc;
    std::vector<long long> counts(nbuck, 0);
#pragma omp parallel
    {
        std::vector<long long> local(nbuck, 0);
#pragma omp for schedule(static)
        for (int a = 0; a < order; ++a) {
            size_t base = (static_cast<size_t>(ka[a] - 1) * m + (ga[a] - 1)) * m;
            for (int b = 0; b < order; ++b)
                ++local[(base + (db[b] - 1)) * nc + g->class_id[g->compose(a, g->inv[b])]];
        }
#pragma omp critical
        for (size_t i = 0; i < nbuck; ++i) counts[i] += local[i];
    }

    Rational total(0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int l = 0; l < m; ++l)
                for (int c = 0; c < nc; ++c) {
                    long long cc = counts[((static_cast<size_t>(i) * m + j) * m + l) * nc + c];
                    if (cc)
                        total += Rational(static_cast<long>(cc)) * rat_pow(k, i + 1) *
                                 rat_pow(n, (j + 1) + (l + 1) + shift) * wg[static_cast<size_t>(c)];
                }
    return total;
}

}  // namespace

Rational exact_moment_conjugate(long n, long k, int p) {
    if (n < 1 || k < 1 || p < 1)
        throw std::invalid_argument("exact_moment_conjugate: bad parameters");
    if (2 * p > GroupTable::kMaxTabledPoints)
        throw BudgetError("exact_moment_conjugate: needs S_{2p} tables, so p <= 3");
    auto [gam, del] = build_gamma_delta(p);
    return banded_pair_sum(n, k, 2 * p, gam, del, -p);
}

Rational second_moment_conjugate_p1(long n, long k) {
    if (n < 1 || k < 1) throw std::invalid_argument("second_moment_conjugate_p1: bad parameters");
    auto [gam, del] = build_bar_gamma_delta(1);
    return banded_pair_sum(n, k, 4, gam, del, -2);
}

Rational covariance_exact_p1(long n, long k) {
    Rational mean = exact_moment_conjugate(n, k, 1);
    return second_moment_conjugate_p1(n, k) - mean * mean;
}

// ---- limits ----

Rational geodesic_limit_conjugate(long k, int p) {
    if (k < 1 || p < 1) throw std::invalid_argument("geodesic_limit_conjugate: bad parameters");
    Rational k3(k * k * k);
    Rational top = Rational(k * k + k - 1) / k3;
    Rational rest = Rational(k - 1) / k3;
    return rat_pow(top, p) + Rational(k * k - 1) * rat_pow(rest, p);
}

Rational geodesic_limit_conjugate_sum(long k, int p) {
    if (k < 1 || p < 1 || p > 16)
        throw std::invalid_argument("geodesic_limit_conjugate_sum: bad parameters");
    Rational total(0);
    for (const GeodesicPair& gp : enumerate_geodesic_pairs(p)) {
        Permutation w = gp.alpha * gp.beta.inverse();
        long e = length(gp.alpha) + length(w);
        total += rat_pow(Rational(1, k), e) * Rational(static_cast<long>(mobius(w)));
    }
    return total;
}

std::vector<Rational> limit_spectrum(ModelKind kind, long n, long k, const Rational& t,
                                     Regime regime) {
    if (n < 1 || k < 1) throw std::invalid_argument("limit_spectrum: n, k must be >= 1");
    std::vector<Rational> out;
    auto pad = [&] { out.resize(static_cast<size_t>(n) * n, Rational(0)); };

    if (kind == ModelKind::independent || kind == ModelKind::conjugate) {
        if (regime == Regime::k_large) {
            // chaotic limit: n^2 equal eigenvalues
            out.assign(static_cast<size_t>(n) * n, Rational(1, n * n));
            return out;
        }
        if (n * n < k * k)
            throw std::invalid_argument("limit_spectrum: output too small for k^2 eigenvalues");
        if (kind == ModelKind::independent) {
            out.assign(static_cast<size_t>(k) * k, Rational(1, k * k));
            pad();
            return out;
        }
        Rational k3(k * k * k);
        out.push_back(Rational(k * k + k - 1) / k3);
        out.insert(out.end(), static_cast<size_t>(k * k - 1), Rational(k - 1) / k3);
        pad();
        return out;
    }
    if (kind == ModelKind::generalized && regime == Regime::n_large) {
        if (t <= 0 || t >= 1) throw std::invalid_argument("limit_spectrum: t must lie in (0,1)");
        if (n * n < k * k)
            throw std::invalid_argument("limit_spectrum: output too small for k^2 eigenvalues");
        Rational rest = (Rational(1) - t) / Rational(k * k);
        out.push_back(t + rest);
        out.insert(out.end(), static_cast<size_t>(k * k - 1), rest);
        pad();
        return out;
    }
    throw std::invalid_argument("limit_spectrum: no prediction for this model/regime");
}

}  // namespace haar
