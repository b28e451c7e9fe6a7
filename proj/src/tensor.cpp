#include "haar/tensor.hpp"

#include <algorithm>
#include <stdexcept>

namespace haar {

namespace {

std::size_t total_size(const std::vector<int>& dims) {
    std::size_t s = 1;
    for (int d : dims) {
        if (d < 1) throw std::invalid_argument("tensor: axis dimension must be positive");
        s *= static_cast<std::size_t>(d);
    }
    return s;
}

// row-major strides
std::vector<std::size_t> strides_of(const std::vector<int>& dims) {
    std::vector<std::size_t> st(dims.size(), 1);
    for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
        st[i] = st[i + 1] * static_cast<std::size_t>(dims[i + 1]);
    return st;
}

bool advance(std::vector<int>& idx, const std::vector<int>& dims) {
    for (int ax = static_cast<int>(dims.size()) - 1; ax >= 0; --ax) {
        if (++idx[ax] < dims[ax]) return true;
        idx[ax] = 0;
    }
    return false;
}

}  // namespace

Tensor::Tensor(std::vector<int> d) : dims(std::move(d)), data(total_size(dims), cdouble(0)) {}

std::size_t Tensor::flat(const std::vector<int>& idx) const {
    if (idx.size() != dims.size()) throw std::invalid_argument("tensor: index rank mismatch");
    std::size_t off = 0, stride = 1;
    for (int ax = static_cast<int>(dims.size()) - 1; ax >= 0; --ax) {
        if (idx[ax] < 0 || idx[ax] >= dims[ax]) throw std::out_of_range("tensor: index out of range");
        off += stride * static_cast<std::size_t>(idx[ax]);
        stride *= static_cast<std::size_t>(dims[ax]);
    }
    return off;
}

cdouble Tensor::scalar() const {
    if (!dims.empty()) throw std::logic_error("tensor: scalar() on tensor of positive rank");
    return data[0];
}

Tensor tensordot(const Tensor& a, const Tensor& b,
                 const std::vector<std::pair<int, int>>& axes) {
    std::vector<bool> a_used(a.dims.size(), false), b_used(b.dims.size(), false);
    for (auto [ax, bx] : axes) {
        if (ax < 0 || ax >= a.rank() || bx < 0 || bx >= b.rank())
            throw std::invalid_argument("tensordot: axis out of range");
        if (a_used[ax] || b_used[bx]) throw std::invalid_argument("tensordot: axis repeated");
        if (a.dims[ax] != b.dims[bx]) throw std::invalid_argument("tensordot: dimension mismatch");
        a_used[ax] = true;
        b_used[bx] = true;
    }
    std::vector<int> a_free, b_free;
    for (int i = 0; i < a.rank(); ++i)
        if (!a_used[i]) a_free.push_back(i);
    for (int i = 0; i < b.rank(); ++i)
        if (!b_used[i]) b_free.push_back(i);

    std::vector<int> out_dims, con_dims;
    for (int i : a_free) out_dims.push_back(a.dims[i]);
    for (int i : b_free) out_dims.push_back(b.dims[i]);
    for (auto [ax, bx] : axes) con_dims.push_back(a.dims[ax]);

    Tensor out(out_dims);
    auto sa = strides_of(a.dims), sb = strides_of(b.dims);

    std::vector<int> fa(a_free.size(), 0), fb(b_free.size(), 0), kk(axes.size(), 0);
    std::vector<int> fa_dims, fb_dims;
    for (int i : a_free) fa_dims.push_back(a.dims[i]);
    for (int i : b_free) fb_dims.push_back(b.dims[i]);

    std::size_t w = 0;
    do {
        std::size_t base_a = 0;
        for (std::size_t t = 0; t < a_free.size(); ++t) base_a += sa[a_free[t]] * fa[t];
        std::fill(fb.begin(), fb.end(), 0);
        do {
            std::size_t base_b = 0;
            for (std::size_t t = 0; t < b_free.size(); ++t) base_b += sb[b_free[t]] * fb[t];
            cdouble acc(0);
            std::fill(kk.begin(), kk.end(), 0);
            do {
                std::size_t oa = base_a, ob = base_b;
                for (std::size_t t = 0; t < axes.size(); ++t) {
                    oa += sa[axes[t].first] * kk[t];
                    ob += sb[axes[t].second] * kk[t];
                }
                acc += a.data[oa] * b.data[ob];
            } while (!con_dims.empty() && advance(kk, con_dims));
            out.data[w++] = acc;
        } while (!fb_dims.empty() && advance(fb, fb_dims));
    } while (!fa_dims.empty() && advance(fa, fa_dims));
    return out;
}

Tensor self_trace(const Tensor& a, int ax1, int ax2) {
    if (ax1 == ax2 || ax1 < 0 || ax2 < 0 || ax1 >= a.rank() || ax2 >= a.rank())
        throw std::invalid_argument("self_trace: bad axes");
    if (a.dims[ax1] != a.dims[ax2]) throw std::invalid_argument("self_trace: dimension mismatch");

    std::vector<int> keep;
    for (int i = 0; i < a.rank(); ++i)
        if (i != ax1 && i != ax2) keep.push_back(i);
    std::vector<int> out_dims;
    for (int i : keep) out_dims.push_back(a.dims[i]);

    Tensor out(out_dims);
    auto sa = strides_of(a.dims);
    std::vector<int> f(keep.size(), 0);
    std::size_t w = 0;
    do {
        std::size_t base = 0;
        for (std::size_t t = 0; t < keep.size(); ++t) base += sa[keep[t]] * f[t];
        cdouble acc(0);
        for (int k = 0; k < a.dims[ax1]; ++k)
            acc += a.data[base + sa[ax1] * static_cast<std::size_t>(k) +
                          sa[ax2] * static_cast<std::size_t>(k)];
        out.data[w++] = acc;
    } while (!out_dims.empty() && advance(f, out_dims));
    return out;
}

Tensor outer(const Tensor& a, const Tensor& b) { return tensordot(a, b, {}); }

Tensor permute(const Tensor& a, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != a.rank())
        throw std::invalid_argument("permute: rank mismatch");
    std::vector<int> out_dims(perm.size());
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (perm[i] < 0 || perm[i] >= a.rank() || seen[perm[i]])
            throw std::invalid_argument("permute: not a permutation of the axes");
        seen[perm[i]] = true;
        out_dims[i] = a.dims[perm[i]];
    }
    Tensor out(out_dims);
    if (a.rank() == 0) {
        out.data = a.data;
        return out;
    }
    auto sa = strides_of(a.dims);
    std::vector<int> idx(out_dims.size(), 0);
    std::size_t w = 0;
    do {
        std::size_t off = 0;
        for (std::size_t t = 0; t < perm.size(); ++t) off += sa[perm[t]] * idx[t];
        out.data[w++] = a.data[off];
    } while (advance(idx, out_dims));
    return out;
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
    if (a.dims != b.dims) throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0;
    for (std::size_t i = 0; i < a.data.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
    return m;
}

}  // namespace haar
