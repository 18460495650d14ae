#include "decosim/tensor.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "decosim/errors.hpp"

namespace decosim {

namespace {

void check_product_dim(Index da, Index db) {
  if (da > kMaxTensorDim / db)
    throw SizeError("tensor product dimension exceeds cap 2^20 (" + std::to_string(da) +
                    " x " + std::to_string(db) + ")");
}

// Strides for a-major composite indexing: index = sum_i digit_i * stride_i.
std::vector<Index> strides_of(const std::vector<Index>& dims) {
  std::vector<Index> s(dims.size());
  Index acc = 1;
  for (std::size_t i = dims.size(); i-- > 0;) {
    s[i] = acc;
    acc *= dims[i];
  }
  return s;
}

}  // namespace

StateVector tensor(const StateVector& a, const StateVector& b) {
  check_product_dim(a.dim(), b.dim());
  CVector out(a.dim() * b.dim());
  for (Index i = 0; i < a.dim(); ++i)
    out.segment(i * b.dim(), b.dim()) = a.amplitude(i) * b.amplitudes();
  return StateVector(std::move(out));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  check_product_dim(a.dim(), b.dim());
  const Index da = a.dim(), db = b.dim();
  CMatrix out(da * db, da * db);
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < da; ++j)
      out.block(i * db, j * db, db, db) = a.entry(i, j) * b.entries();
  return DensityMatrix(std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<Index>& dims,
                            std::size_t keep) {
  return partial_trace_keep(rho, dims, {keep});
}

DensityMatrix partial_trace_keep(const DensityMatrix& rho, const std::vector<Index>& dims,
                                 const std::vector<std::size_t>& keep) {
  const Index total =
      std::accumulate(dims.begin(), dims.end(), Index(1), std::multiplies<Index>());
  if (total != rho.dim())
    throw ShapeError("factor dims multiply to " + std::to_string(total) +
                     " but rho has dim " + std::to_string(rho.dim()));
  if (keep.empty()) throw std::invalid_argument("must keep at least one factor");
  if (!std::is_sorted(keep.begin(), keep.end()) ||
      std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw std::invalid_argument("kept factor indices must be sorted and unique");
  if (keep.back() >= dims.size())
    throw std::invalid_argument("kept factor index out of range");

  const auto strides = strides_of(dims);
  std::vector<std::size_t> traced;
  for (std::size_t s = 0; s < dims.size(); ++s)
    if (!std::binary_search(keep.begin(), keep.end(), s)) traced.push_back(s);

  Index dim_keep = 1;
  for (auto s : keep) dim_keep *= dims[s];
  Index dim_traced = 1;
  for (auto s : traced) dim_traced *= dims[s];

  // Map a linear index over a factor subset to its offset in the full space.
  auto offset_of = [&](const std::vector<std::size_t>& subset, Index linear) {
    Index offset = 0;
    for (std::size_t s = subset.size(); s-- > 0;) {
      const Index d = dims[subset[s]];
      offset += (linear % d) * strides[subset[s]];
      linear /= d;
    }
    return offset;
  };

  CMatrix out = CMatrix::Zero(dim_keep, dim_keep);
  for (Index r = 0; r < dim_keep; ++r) {
    const Index row_base = offset_of(keep, r);
    for (Index c = 0; c < dim_keep; ++c) {
      const Index col_base = offset_of(keep, c);
      Complex sum(0.0, 0.0);
      for (Index t = 0; t < dim_traced; ++t) {
        const Index off = offset_of(traced, t);
        sum += rho.entry(row_base + off, col_base + off);
      }
      out(r, c) = sum;
    }
  }
  out = 0.5 * (out + out.adjoint().eval());
  return DensityMatrix(std::move(out));
}

}  // namespace decosim
