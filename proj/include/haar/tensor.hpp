#pragma once

#include <complex>
#include <vector>

namespace haar {

using cdouble = std::complex<double>;

/// Dense complex tensor, row-major over `dims` in order. Rank 0 is a scalar
/// (one data entry).
struct Tensor {
    std::vector<int> dims;
    std::vector<cdouble> data;

    Tensor() : data(1, cdouble(0)) {}
    explicit Tensor(std::vector<int> d);

    int rank() const { return static_cast<int>(dims.size()); }
    std::size_t size() const { return data.size(); }

    std::size_t flat(const std::vector<int>& idx) const;
    cdouble& at(const std::vector<int>& idx) { return data[flat(idx)]; }
    const cdouble& at(const std::vector<int>& idx) const { return data[flat(idx)]; }

    cdouble scalar() const;   // rank 0 only
};

/// Contract over the listed axis pairs (axis of a, axis of b). Result keeps
/// a's free axes in order, then b's.
Tensor tensordot(const Tensor& a, const Tensor& b,
                 const std::vector<std::pair<int, int>>& axes);

/// Sum over ax1 == ax2 (dimensions must match); both axes drop out.
Tensor self_trace(const Tensor& a, int ax1, int ax2);

/// Free juxtaposition: result axes are a's then b's.
Tensor outer(const Tensor& a, const Tensor& b);

/// Reorder axes so that result axis i is input axis perm[i].
Tensor permute(const Tensor& a, const std::vector<int>& perm);

/// max |a - b| over entries; shapes must agree.
double max_abs_diff(const Tensor& a, const Tensor& b);

}  // namespace haar
