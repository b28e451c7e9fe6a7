#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace haar {

using Rational = mpq_class;
using Integer = mpz_class;

/// base^e with e possibly negative (base != 0 in that case).
inline Rational rat_pow(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    bool neg = e < 0;
    unsigned long k = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), k);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), k);
    r.canonicalize();
    if (neg) {
        if (r == 0) throw std::domain_error("rat_pow: negative power of zero");
        r = 1 / r;
    }
    return r;
}

inline Rational rat_pow(long base, long e) { return rat_pow(Rational(base), e); }

/// Serialize as "num/den" (canonical form, den > 0). Integers render as "n/1".
inline std::string rat_str(const Rational& q) {
    Rational c(q);
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

/// Accepts "num/den", plain integers, and decimal literals like "0.25".
inline Rational rat_parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("rat_parse: empty string");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rational q(s);
        q.canonicalize();
        if (q.get_den() == 0) throw std::invalid_argument("rat_parse: zero denominator");
        return q;
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        Rational q(s);
        q.canonicalize();
        return q;
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    if (frac_len == 0) throw std::invalid_argument("rat_parse: trailing dot");
    Rational num(digits);
    Rational den(1);
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    Rational q = num / den;
    q.canonicalize();
    return q;
}

inline double rat_double(const Rational& q) { return q.get_d(); }

// Small dense rational matrix, row-major. Enough for exact trace products.
struct RatMatrix {
    int rows = 0, cols = 0;
    std::vector<Rational> a;

    RatMatrix() = default;
    RatMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rational(0)) {}

    Rational& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Rational& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static RatMatrix identity(int n) {
        RatMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
};

inline RatMatrix rat_mat_mul(const RatMatrix& x, const RatMatrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("rat_mat_mul: shape mismatch");
    RatMatrix z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int l = 0; l < x.cols; ++l) {
            const Rational& v = x(i, l);
            if (v == 0) continue;
            for (int j = 0; j < y.cols; ++j) z(i, j) += v * y(l, j);
        }
    return z;
}

inline RatMatrix rat_mat_transpose(const RatMatrix& x) {
    RatMatrix z(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) z(j, i) = x(i, j);
    return z;
}

inline Rational rat_mat_trace(const RatMatrix& x) {
    if (x.rows != x.cols) throw std::invalid_argument("rat_mat_trace: not square");
    Rational t(0);
    for (int i = 0; i < x.rows; ++i) t += x(i, i);
    return t;
}

}  // namespace haar
