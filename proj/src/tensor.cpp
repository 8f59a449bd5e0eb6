// SPDX-FileCopyrightText: 2026 The OpFlow Authors
// SPDX-License-Identifier: Apache-2.0

#include "opflow/tensor.hpp"

#include <cmath>
#include <cstring>

namespace opflow {

TensorValue TensorValue::alloc(std::vector<int64_t> shape, Dtype dtype, BatchSemantics batch,
                               const MeterPtr& meter) {
  TensorValue v;
  v.shape = std::move(shape);
  v.dtype = dtype;
  v.batch = batch;
  int64_t n = 1;
  for (int64_t d : v.shape) n *= d;
  v.storage = std::make_shared<Storage>(dtype, n, meter);
  return v;
}

TensorValue TensorValue::view_rows(int64_t row_off, int64_t nrows) const {
  if (shape.empty() || row_off < 0 || nrows < 0 || row_off + nrows > rows())
    fail(Errc::SizeMismatch, "row view out of range");
  TensorValue v = *this;
  v.shape[0] = nrows;
  v.offset = offset + row_off * row_elems();
  return v;
}

void TensorValue::copy_into(TensorValue& dst) const {
  if (dst.dtype != dtype || dst.numel() != numel())
    fail(Errc::ShapeMismatch, "copy_into shape/dtype mismatch");
  const std::size_t n = static_cast<std::size_t>(numel());
  if (dtype == Dtype::kI64)
    std::memcpy(dst.i64(), i64(), n * sizeof(int64_t));
  else
    std::memcpy(dst.f32(), f32(), n * sizeof(float));
}

TensorValue TensorValue::clone(const MeterPtr& meter, bool count_as_reshard) const {
  TensorValue v = alloc(shape, dtype, batch, meter);
  copy_into(v);
  if (count_as_reshard && meter) meter->on_copy_elems(numel());
  return v;
}

bool bit_equal(const TensorValue& a, const TensorValue& b) {
  if (a.shape != b.shape || a.dtype != b.dtype) return false;
  const std::size_t n = static_cast<std::size_t>(a.numel());
  if (a.dtype == Dtype::kI64) return std::memcmp(a.i64(), b.i64(), n * sizeof(int64_t)) == 0;
  return std::memcmp(a.f32(), b.f32(), n * sizeof(float)) == 0;
}

bool approx_equal(const TensorValue& a, const TensorValue& b, double rtol, double atol) {
  if (a.shape != b.shape || a.dtype != b.dtype) return false;
  const std::size_t n = static_cast<std::size_t>(a.numel());
  if (a.dtype == Dtype::kI64) return std::memcmp(a.i64(), b.i64(), n * sizeof(int64_t)) == 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = a.f32()[i], y = b.f32()[i];
    if (std::abs(x - y) > atol + rtol * std::abs(y)) return false;
  }
  return true;
}

std::vector<TensorValue> split_rows(const TensorValue& t, std::span<const int64_t> sizes) {
  if (t.batch == BatchSemantics::kReplicated)
    fail(Errc::SplitReplicated, "cannot split a replicated tensor");
  if (t.shape.empty()) fail(Errc::SizeMismatch, "cannot split a rank-0 tensor");
  int64_t total = 0;
  for (int64_t s : sizes) {
    if (s < 1) fail(Errc::SizeMismatch, "split sizes must be >= 1");
    total += s;
  }
  if (total != t.rows()) fail(Errc::SizeMismatch, "split sizes do not sum to row extent");
  std::vector<TensorValue> parts;
  parts.reserve(sizes.size());
  int64_t off = 0;
  for (int64_t s : sizes) {
    parts.push_back(t.view_rows(off, s));
    off += s;
  }
  return parts;
}

TensorValue concat_rows(std::span<const TensorValue> parts, const MeterPtr& meter) {
  if (parts.empty()) fail(Errc::SizeMismatch, "concat_rows of zero parts");
  const TensorValue& first = parts[0];
  int64_t total_rows = 0;
  for (const TensorValue& p : parts) {
    if (p.shape.empty() || p.dtype != first.dtype || p.row_elems() != first.row_elems() ||
        p.shape.size() != first.shape.size())
      fail(Errc::ShapeMismatch, "concat_rows parts disagree");
    total_rows += p.rows();
  }
  std::vector<int64_t> shape = first.shape;
  shape[0] = total_rows;
  TensorValue out = TensorValue::alloc(std::move(shape), first.dtype, first.batch, meter);
  int64_t off = 0;
  for (const TensorValue& p : parts) {
    TensorValue dst = out.view_rows(off, p.rows());
    p.copy_into(dst);
    off += p.rows();
  }
  if (meter) meter->on_copy_elems(out.numel());
  return out;
}

}  // namespace opflow
