// SPDX-FileCopyrightText: 2026 The OpFlow Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdlib>

#include "opflow/kernels.hpp"

namespace opflow::kernels {

namespace scalar {

void add_i64(const int64_t* a, const int64_t* b, int64_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

void add_f32(const float* a, const float* b, float* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

void scale_i64(const int64_t* x, int64_t factor, int64_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * factor;
}

void scale_f32(const float* x, float factor, float* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * factor;
}

void row_scale_f32(const float* x, float* out, std::size_t rows, std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) {
    const float* row = x + r * cols;
    float sumsq = 0.0f;
    for (std::size_t c = 0; c < cols; ++c) sumsq += row[c] * row[c];
    const float inv = 1.0f / std::sqrt(sumsq / static_cast<float>(cols) + 1e-6f);
    float* orow = out + r * cols;
    for (std::size_t c = 0; c < cols; ++c) orow[c] = row[c] * inv;
  }
}

void matmul_i64(const int64_t* a, const int64_t* w, int64_t* out, std::size_t rows,
                std::size_t k, std::size_t n) {
  for (std::size_t r = 0; r < rows; ++r) {
    int64_t* orow = out + r * n;
    for (std::size_t j = 0; j < n; ++j) orow[j] = 0;
    const int64_t* arow = a + r * k;
    for (std::size_t kk = 0; kk < k; ++kk) {
      const int64_t av = arow[kk];
      const int64_t* wrow = w + kk * n;
      for (std::size_t j = 0; j < n; ++j) orow[j] += av * wrow[j];
    }
  }
}

void matmul_f32(const float* a, const float* w, float* out, std::size_t rows, std::size_t k,
                std::size_t n) {
  for (std::size_t r = 0; r < rows; ++r) {
    float* orow = out + r * n;
    for (std::size_t j = 0; j < n; ++j) orow[j] = 0.0f;
    const float* arow = a + r * k;
    for (std::size_t kk = 0; kk < k; ++kk) {
      const float av = arow[kk];
      const float* wrow = w + kk * n;
      for (std::size_t j = 0; j < n; ++j) orow[j] += av * wrow[j];
    }
  }
}

}  // namespace scalar

void row_scale_i64(const int64_t* x, int64_t* out, std::size_t rows, std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) {
    const int64_t* row = x + r * cols;
    int64_t stat = 1;
    for (std::size_t c = 0; c < cols; ++c) {
      const int64_t mag = row[c] < 0 ? -row[c] : row[c];
      if (mag > stat) stat = mag;
    }
    int64_t* orow = out + r * cols;
    for (std::size_t c = 0; c < cols; ++c) orow[c] = row[c] / stat;
  }
}

void row_prefix_sum_i64(const int64_t* x, int64_t* out, std::size_t rows, std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) {
    int64_t acc = 0;
    for (std::size_t c = 0; c < cols; ++c) {
      acc += x[r * cols + c];
      out[r * cols + c] = acc;
    }
  }
}

void row_prefix_sum_f32(const float* x, float* out, std::size_t rows, std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) {
    float acc = 0.0f;
    for (std::size_t c = 0; c < cols; ++c) {
      acc += x[r * cols + c];
      out[r * cols + c] = acc;
    }
  }
}

void permute_cols_i64(const int64_t* x, int64_t* out, std::size_t rows, std::size_t cols,
                      const uint32_t* perm) {
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) out[r * cols + c] = x[r * cols + perm[c]];
}

void permute_cols_f32(const float* x, float* out, std::size_t rows, std::size_t cols,
                      const uint32_t* perm) {
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) out[r * cols + c] = x[r * cols + perm[c]];
}

}  // namespace opflow::kernels
