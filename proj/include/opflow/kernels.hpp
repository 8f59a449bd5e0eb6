// SPDX-FileCopyrightText: 2026 The OpFlow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>

// Numeric inner loops of the reference interpreter. Scalar implementations are
// the reference; an AVX2 variant is selected at runtime when the CPU supports
// it (override with OPF_SIMD=scalar|avx2|auto). The AVX2 lane is written
// mul+add (no FMA contraction) and vectorizes only across independent output
// elements, so both lanes produce bit-identical results; the equivalence test
// asserts exact equality.

namespace opflow::kernels {

enum class Backend { kScalar, kAvx2 };

Backend active_backend();
const char* backend_name(Backend b);
// Returns false if the requested backend is unavailable on this CPU.
bool force_backend(Backend b);
bool avx2_supported();

// Dispatched entry points.
void add_i64(const int64_t* a, const int64_t* b, int64_t* out, std::size_t n);
void add_f32(const float* a, const float* b, float* out, std::size_t n);
void scale_i64(const int64_t* x, int64_t factor, int64_t* out, std::size_t n);
void scale_f32(const float* x, float factor, float* out, std::size_t n);
// out[r] = x[r] / sqrt(mean(x[r]^2) + 1e-6f), rowwise.
void row_scale_f32(const float* x, float* out, std::size_t rows, std::size_t cols);
// Row-major [rows,k] x [k,n] -> [rows,n].
void matmul_i64(const int64_t* a, const int64_t* w, int64_t* out, std::size_t rows,
                std::size_t k, std::size_t n);
void matmul_f32(const float* a, const float* w, float* out, std::size_t rows, std::size_t k,
                std::size_t n);

// Scalar-only helpers (no data-parallel inner loop worth vectorizing here).
// out[r] = x[r] / max(1, max|x[r]|), trunc toward zero, rowwise.
void row_scale_i64(const int64_t* x, int64_t* out, std::size_t rows, std::size_t cols);
void row_prefix_sum_i64(const int64_t* x, int64_t* out, std::size_t rows, std::size_t cols);
void row_prefix_sum_f32(const float* x, float* out, std::size_t rows, std::size_t cols);
// out[i][j] = x[i][perm[j]]; perm must be a permutation of [0, cols).
void permute_cols_i64(const int64_t* x, int64_t* out, std::size_t rows, std::size_t cols,
                      const uint32_t* perm);
void permute_cols_f32(const float* x, float* out, std::size_t rows, std::size_t cols,
                      const uint32_t* perm);

// Individual lanes, exposed for the equivalence tests.
namespace scalar {
void add_i64(const int64_t* a, const int64_t* b, int64_t* out, std::size_t n);
void add_f32(const float* a, const float* b, float* out, std::size_t n);
void scale_i64(const int64_t* x, int64_t factor, int64_t* out, std::size_t n);
void scale_f32(const float* x, float factor, float* out, std::size_t n);
void row_scale_f32(const float* x, float* out, std::size_t rows, std::size_t cols);
void matmul_i64(const int64_t* a, const int64_t* w, int64_t* out, std::size_t rows,
                std::size_t k, std::size_t n);
void matmul_f32(const float* a, const float* w, float* out, std::size_t rows, std::size_t k,
                std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define OPFLOW_HAVE_AVX2_LANE 1
namespace avx2 {
void add_i64(const int64_t* a, const int64_t* b, int64_t* out, std::size_t n);
void add_f32(const float* a, const float* b, float* out, std::size_t n);
void scale_i64(const int64_t* x, int64_t factor, int64_t* out, std::size_t n);
void scale_f32(const float* x, float factor, float* out, std::size_t n);
void row_scale_f32(const float* x, float* out, std::size_t rows, std::size_t cols);
void matmul_i64(const int64_t* a, const int64_t* w, int64_t* out, std::size_t rows,
                std::size_t k, std::size_t n);
void matmul_f32(const float* a, const float* w, float* out, std::size_t rows, std::size_t k,
                std::size_t n);
}  // namespace avx2
#else
#define OPFLOW_HAVE_AVX2_LANE 0
#endif

}  // namespace opflow::kernels
