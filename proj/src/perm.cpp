#include "haar/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace haar {

Permutation::Permutation(int p) {
    if (p < 0) throw std::invalid_argument("Permutation: negative size");
    img_.resize(p);
    std::iota(img_.begin(), img_.end(), 0);
}

Permutation::Permutation(std::vector<int> images0) : img_(std::move(images0)) { check(); }

Permutation Permutation::from_one_based(const std::vector<int>& images1) {
    std::vector<int> v(images1.size());
    for (size_t i = 0; i < images1.size(); ++i) v[i] = images1[i] - 1;
    return Permutation(std::move(v));
}

void Permutation::check() const {
    const int p = size();
    std::vector<char> seen(p, 0);
    for (int v : img_) {
        if (v < 0 || v >= p || seen[v]) throw std::invalid_argument("Permutation: images are not a bijection");
        seen[v] = 1;
    }
}

Permutation Permutation::inverse() const {
    std::vector<int> v(img_.size());
    for (int i = 0; i < size(); ++i) v[img_[i]] = i;
    Permutation r;
    r.img_ = std::move(v);
    return r;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw std::invalid_argument("Permutation compose: size mismatch");
    std::vector<int> v(a.img_.size());
    for (int i = 0; i < a.size(); ++i) v[i] = a.img_[b.img_[i]];
    Permutation r;
    r.img_ = std::move(v);
    return r;
}

bool Permutation::is_identity() const {
    for (int i = 0; i < size(); ++i)
        if (img_[i] != i) return false;
    return true;
}

std::vector<std::vector<int>> Permutation::cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(img_.size(), 0);
    for (int i = 0; i < size(); ++i) {
        if (seen[i]) continue;
        std::vector<int> c;
        int j = i;
        while (!seen[j]) {
            seen[j] = 1;
            c.push_back(j);
            j = img_[j];
        }
        out.push_back(std::move(c));
    }
    return out;
}

int Permutation::cycle_count() const {
    int n = 0;
    std::vector<char> seen(img_.size(), 0);
    for (int i = 0; i < size(); ++i) {
        if (seen[i]) continue;
        ++n;
        for (int j = i; !seen[j]; j = img_[j]) seen[j] = 1;
    }
    return n;
}

std::vector<int> Permutation::one_based_images() const {
    std::vector<int> v(img_.size());
    for (size_t i = 0; i < img_.size(); ++i) v[i] = img_[i] + 1;
    return v;
}

std::string Permutation::to_string() const {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < size(); ++i) os << (i ? "," : "") << img_[i] + 1;
    os << ']';
    return os.str();
}

CycleType::CycleType(std::vector<int> p) : parts(std::move(p)) {
    for (int v : parts)
        if (v <= 0) throw std::invalid_argument("CycleType: parts must be positive");
    std::sort(parts.begin(), parts.end(), std::greater<int>());
}

CycleType CycleType::of(const Permutation& a) {
    std::vector<int> parts;
    for (auto& c : a.cycles()) parts.push_back(static_cast<int>(c.size()));
    return CycleType(std::move(parts));
}

int CycleType::sum() const {
    int s = 0;
    for (int v : parts) s += v;
    return s;
}

std::string CycleType::to_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < parts.size(); ++i) os << (i ? "+" : "") << parts[i];
    return os.str();
}

CycleType CycleType::parse(const std::string& s, int expected_sum) {
    std::vector<int> parts;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, '+')) {
        if (tok.empty()) throw std::invalid_argument("CycleType::parse: empty part");
        parts.push_back(std::stoi(tok));
    }
    CycleType t(std::move(parts));
    if (expected_sum >= 0 && t.sum() != expected_sum)
        throw std::invalid_argument("CycleType::parse: wrong total");
    return t;
}

CycleType cycle_type(const Permutation& a) { return CycleType::of(a); }

int length(const Permutation& a) { return a.size() - a.cycle_count(); }

int distance(const Permutation& a, const Permutation& b) { return length(a.inverse() * b); }

bool is_geodesic(const Permutation& a, const Permutation& m, const Permutation& b) {
    return distance(a, m) + distance(m, b) == distance(a, b);
}

long long catalan(int i) {
    if (i < 0 || i > 32) throw std::invalid_argument("catalan: index out of range");
    long long c = 1;
    for (int j = 0; j < i; ++j) c = c * 2 * (2 * j + 1) / (j + 2);
    return c;
}

long long mobius(const CycleType& t) {
    long long m = 1;
    for (int d : t.parts) {
        long long f = catalan(d - 1);
        m *= (d % 2 == 0) ? -f : f;
    }
    return m;
}

long long mobius(const Permutation& a) { return mobius(CycleType::of(a)); }

std::complex<double> trace_sigma(const std::vector<Eigen::MatrixXcd>& mats, const Permutation& a) {
    if (static_cast<int>(mats.size()) != a.size())
        throw std::invalid_argument("trace_sigma: arity mismatch");
    std::complex<double> out(1.0, 0.0);
    for (auto& c : a.cycles()) {
        Eigen::MatrixXcd w = mats[c[0]];
        for (size_t j = 1; j < c.size(); ++j) w = w * mats[c[j]];
        out *= w.trace();
    }
    return out;
}

Rational trace_sigma(const std::vector<RatMatrix>& mats, const Permutation& a) {
    if (static_cast<int>(mats.size()) != a.size())
        throw std::invalid_argument("trace_sigma: arity mismatch");
    Rational out(1);
    for (auto& c : a.cycles()) {
        RatMatrix w = mats[c[0]];
        for (size_t j = 1; j < c.size(); ++j) w = rat_mat_mul(w, mats[c[j]]);
        out *= rat_mat_trace(w);
    }
    return out;
}

Permutation gamma_cycle(int p) {
    if (p <= 0) throw std::invalid_argument("gamma_cycle: p must be positive");
    std::vector<int> v(p);
    for (int i = 0; i < p; ++i) v[i] = (i + p - 1) % p;
    return Permutation(std::move(v));
}

int flatten(const LabeledIndex& li, int p) {
    if (li.i < 1 || li.i > p) throw std::invalid_argument("flatten: index out of band");
    return (li.band == Band::T) ? li.i - 1 : p + li.i - 1;
}

LabeledIndex unflatten(int point, int p) {
    if (point < 0 || point >= 2 * p) throw std::invalid_argument("unflatten: point out of range");
    return point < p ? LabeledIndex{point + 1, Band::T} : LabeledIndex{point - p + 1, Band::B};
}

std::pair<Permutation, Permutation> build_gamma_delta(int p) {
    if (p <= 0) throw std::invalid_argument("build_gamma_delta: p must be positive");
    std::vector<int> g(2 * p), d(2 * p);
    for (int i = 0; i < p; ++i) {
        g[i] = (i + p - 1) % p;              // i^T -> (i-1)^T
        g[p + i] = p + (i + 1) % p;          // i^B -> (i+1)^B
        d[i] = p + i;                        // i^T -> i^B
        d[p + i] = i;
    }
    return {Permutation(std::move(g)), Permutation(std::move(d))};
}

std::pair<Permutation, Permutation> build_bar_gamma_delta(int p) {
    if (p <= 0) throw std::invalid_argument("build_bar_gamma_delta: p must be positive");
    const int q = 2 * p, n = 4 * p;
    std::vector<int> g(n), d(n);
    auto block_next = [&](int off, int i) { return off + (i + 1) % p; };
    for (int i = 0; i < p; ++i) {
        g[i] = block_next(0, i);             // (1^T .. p^T)
        g[p + i] = block_next(p, i);         // ((p+1)^T .. (2p)^T)
        g[q + i] = block_next(q, i);         // (1^B .. p^B)
        g[q + p + i] = block_next(q + p, i); // ((p+1)^B .. (2p)^B)
    }
    for (int i = 0; i < q; ++i) {
        d[i] = q + i;
        d[q + i] = i;
    }
    return {Permutation(std::move(g)), Permutation(std::move(d))};
}

Permutation tau_transposition(int p, int i) {
    if (i < 1 || i > p) throw std::invalid_argument("tau_transposition: index out of range");
    Permutation t(2 * p);
    std::vector<int> v = t.images();
    int a = flatten({i, Band::T}, p);
    int jb = (i == 1) ? p : i - 1;           // cyclic: (1^T, p^B)
    int b = flatten({jb, Band::B}, p);
    std::swap(v[a], v[b]);
    return Permutation(std::move(v));
}

std::vector<GeodesicAlpha> enumerate_geodesic_alphas(int p) {
    if (p <= 0 || p > 20) throw std::invalid_argument("enumerate_geodesic_alphas: p out of range");
    auto [gamma, delta] = build_gamma_delta(p);
    (void)delta;
    std::vector<GeodesicAlpha> out;
    out.reserve(1u << p);
    for (uint32_t mask = 0; mask < (1u << p); ++mask) {
        Permutation prod(2 * p);
        for (int i = 1; i <= p; ++i)
            if (mask & (1u << (i - 1))) prod = prod * tau_transposition(p, i);
        out.push_back({mask, gamma * prod});
    }
    return out;
}

std::vector<GeodesicPair> enumerate_geodesic_pairs(int p) {
    auto alphas = enumerate_geodesic_alphas(p);
    std::vector<GeodesicPair> out;
    for (uint32_t b = 0; b < (1u << p); ++b) {
        // iterate subsets a of b, including empty and b itself
        uint32_t a = b;
        while (true) {
            out.push_back({a, b, alphas[a].alpha, alphas[b].alpha});
            if (a == 0) break;
            a = (a - 1) & b;
        }
    }
    return out;
}

int excess(const Permutation& a, const Permutation& b,
           const Permutation& g, const Permutation& d) {
    return distance(g, a) + distance(a, b) + distance(b, d) - distance(g, d);
}

}  // namespace haar
