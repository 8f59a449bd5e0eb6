// SPDX-FileCopyrightText: 2026 The OpFlow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "opflow/common.hpp"

namespace opflow {

enum class Dtype { kI64, kF32 };
enum class BatchSemantics { kBatched, kReplicated };

inline int64_t dtype_bytes(Dtype d) { return d == Dtype::kI64 ? 8 : 4; }

// Per-run accounting: live/peak bytes of materialized storage and the number
// of elements copied for micro-batch split/merge resharding. Kernel-internal
// writes are not copies; only resharding movement counts.
class MemoryMeter {
 public:
  void on_alloc(int64_t bytes) {
    int64_t now = live_.fetch_add(bytes, std::memory_order_relaxed) + bytes;
    int64_t peak = peak_.load(std::memory_order_relaxed);
    while (now > peak && !peak_.compare_exchange_weak(peak, now, std::memory_order_relaxed)) {
    }
  }
  void on_free(int64_t bytes) { live_.fetch_sub(bytes, std::memory_order_relaxed); }
  void on_copy_elems(int64_t elems) { copied_.fetch_add(elems, std::memory_order_relaxed); }

  int64_t live_bytes() const { return live_.load(std::memory_order_relaxed); }
  int64_t peak_bytes() const { return peak_.load(std::memory_order_relaxed); }
  int64_t copied_elements() const { return copied_.load(std::memory_order_relaxed); }

 private:
  std::atomic<int64_t> live_{0};
  std::atomic<int64_t> peak_{0};
  std::atomic<int64_t> copied_{0};
};

using MeterPtr = std::shared_ptr<MemoryMeter>;

// Contiguous typed buffer. Lives as long as any TensorValue views it; meter
// accounting follows the storage lifetime, so dropping the last view IS the
// reclamation event.
class Storage {
 public:
  Storage(Dtype dtype, int64_t numel, MeterPtr meter)
      : dtype_(dtype), numel_(numel), meter_(std::move(meter)) {
    if (dtype_ == Dtype::kI64)
      i64_.assign(static_cast<std::size_t>(numel), 0);
    else
      f32_.assign(static_cast<std::size_t>(numel), 0.0f);
    if (meter_) meter_->on_alloc(bytes());
  }
  ~Storage() {
    if (meter_) meter_->on_free(bytes());
  }
  Storage(const Storage&) = delete;
  Storage& operator=(const Storage&) = delete;

  Dtype dtype() const { return dtype_; }
  int64_t numel() const { return numel_; }
  int64_t bytes() const { return numel_ * dtype_bytes(dtype_); }
  int64_t* i64() { return i64_.data(); }
  const int64_t* i64() const { return i64_.data(); }
  float* f32() { return f32_.data(); }
  const float* f32() const { return f32_.data(); }

 private:
  Dtype dtype_;
  int64_t numel_;
  MeterPtr meter_;
  std::vector<int64_t> i64_;
  std::vector<float> f32_;
};

// A (possibly row-sliced) view of a Storage. Row slices are contiguous, so a
// view is just (storage, element offset, shape).
struct TensorValue {
  std::vector<int64_t> shape;
  Dtype dtype = Dtype::kI64;
  BatchSemantics batch = BatchSemantics::kBatched;
  std::shared_ptr<Storage> storage;
  int64_t offset = 0;  // in elements

  bool valid() const { return storage != nullptr; }
  int64_t rows() const { return shape.empty() ? 1 : shape[0]; }
  int64_t row_elems() const {
    int64_t n = 1;
    for (std::size_t i = 1; i < shape.size(); ++i) n *= shape[i];
    return n;
  }
  int64_t numel() const { return rows() * row_elems(); }

  const int64_t* i64() const { return storage->i64() + offset; }
  int64_t* i64() { return storage->i64() + offset; }
  const float* f32() const { return storage->f32() + offset; }
  float* f32() { return storage->f32() + offset; }

  static TensorValue alloc(std::vector<int64_t> shape, Dtype dtype, BatchSemantics batch,
                           const MeterPtr& meter);
  // Zero-copy view of rows [row_off, row_off + nrows).
  TensorValue view_rows(int64_t row_off, int64_t nrows) const;
  // Deep copy into fresh storage; counts toward the meter's copied elements
  // when count_as_reshard is set.
  TensorValue clone(const MeterPtr& meter, bool count_as_reshard = false) const;
  void copy_into(TensorValue& dst) const;
};

bool bit_equal(const TensorValue& a, const TensorValue& b);
bool approx_equal(const TensorValue& a, const TensorValue& b, double rtol = 1e-6,
                  double atol = 1e-9);

// Row-disjoint zero-copy views, in order; sum(sizes) must equal t rows.
std::vector<TensorValue> split_rows(const TensorValue& t, std::span<const int64_t> sizes);
// Exact inverse of split_rows: allocates and copies (counted as resharding).
TensorValue concat_rows(std::span<const TensorValue> parts, const MeterPtr& meter);

}  // namespace opflow
