// SPDX-FileCopyrightText: 2026 The OpFlow Authors
// SPDX-License-Identifier: Apache-2.0

// AVX2 lane. Vectorization is across independent output elements only and the
// f32 paths use separate mul/add (this TU is built without -mfma), so every
// function here is bit-equivalent to its scalar counterpart.

#include "opflow/kernels.hpp"

#if OPFLOW_HAVE_AVX2_LANE

#include <immintrin.h>

#include <cmath>

namespace opflow::kernels::avx2 {

namespace {

// 64-bit lane-wise multiply from 32-bit partial products (no _mm256_mullo_epi64 in AVX2).
inline __m256i mul_epi64(__m256i a, __m256i b) {
  __m256i bswap = _mm256_shuffle_epi32(b, 0xB1);
  __m256i prodlh = _mm256_mullo_epi32(a, bswap);
  __m256i zero = _mm256_setzero_si256();
  __m256i prodlh2 = _mm256_hadd_epi32(prodlh, zero);
  __m256i prodlh3 = _mm256_shuffle_epi32(prodlh2, 0x73);
  __m256i prodll = _mm256_mul_epu32(a, b);
  return _mm256_add_epi64(prodll, prodlh3);
}

}  // namespace

void add_i64(const int64_t* a, const int64_t* b, int64_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_add_epi64(va, vb));
  }
  for (; i < n; ++i) out[i] = a[i] + b[i];
}

void add_f32(const float* a, const float* b, float* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 va = _mm256_loadu_ps(a + i);
    __m256 vb = _mm256_loadu_ps(b + i);
    _mm256_storeu_ps(out + i, _mm256_add_ps(va, vb));
  }
  for (; i < n; ++i) out[i] = a[i] + b[i];
}

void scale_i64(const int64_t* x, int64_t factor, int64_t* out, std::size_t n) {
  const __m256i vf = _mm256_set1_epi64x(factor);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i vx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), mul_epi64(vx, vf));
  }
  for (; i < n; ++i) out[i] = x[i] * factor;
}

void scale_f32(const float* x, float factor, float* out, std::size_t n) {
  const __m256 vf = _mm256_set1_ps(factor);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    _mm256_storeu_ps(out + i, _mm256_mul_ps(_mm256_loadu_ps(x + i), vf));
  }
  for (; i < n; ++i) out[i] = x[i] * factor;
}

void row_scale_f32(const float* x, float* out, std::size_t rows, std::size_t cols) {
  // Scalar reduction keeps the summation order identical to the scalar lane;
  // only the per-element apply is vectorized.
  for (std::size_t r = 0; r < rows; ++r) {
    const float* row = x + r * cols;
    float sumsq = 0.0f;
    for (std::size_t c = 0; c < cols; ++c) sumsq += row[c] * row[c];
    const float inv = 1.0f / std::sqrt(sumsq / static_cast<float>(cols) + 1e-6f);
    float* orow = out + r * cols;
    const __m256 vinv = _mm256_set1_ps(inv);
    std::size_t c = 0;
    for (; c + 8 <= cols; c += 8) {
      _mm256_storeu_ps(orow + c, _mm256_mul_ps(_mm256_loadu_ps(row + c), vinv));
    }
    for (; c < cols; ++c) orow[c] = row[c] * inv;
  }
}

void matmul_i64(const int64_t* a, const int64_t* w, int64_t* out, std::size_t rows,
                std::size_t k, std::size_t n) {
  for (std::size_t r = 0; r < rows; ++r) {
    int64_t* orow = out + r * n;
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4)
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(orow + j), _mm256_setzero_si256());
    for (; j < n; ++j) orow[j] = 0;
    const int64_t* arow = a + r * k;
    for (std::size_t kk = 0; kk < k; ++kk) {
      const __m256i av = _mm256_set1_epi64x(arow[kk]);
      const int64_t* wrow = w + kk * n;
      std::size_t jj = 0;
      for (; jj + 4 <= n; jj += 4) {
        __m256i vw = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(wrow + jj));
        __m256i vo = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(orow + jj));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(orow + jj),
                            _mm256_add_epi64(vo, mul_epi64(av, vw)));
      }
      const int64_t avs = arow[kk];
      for (; jj < n; ++jj) orow[jj] += avs * wrow[jj];
    }
  }
}

void matmul_f32(const float* a, const float* w, float* out, std::size_t rows, std::size_t k,
                std::size_t n) {
  for (std::size_t r = 0; r < rows; ++r) {
    float* orow = out + r * n;
    std::size_t j = 0;
    for (; j + 8 <= n; j += 8) _mm256_storeu_ps(orow + j, _mm256_setzero_ps());
    for (; j < n; ++j) orow[j] = 0.0f;
    const float* arow = a + r * k;
    for (std::size_t kk = 0; kk < k; ++kk) {
      const __m256 av = _mm256_set1_ps(arow[kk]);
      const float* wrow = w + kk * n;
      std::size_t jj = 0;
      for (; jj + 8 <= n; jj += 8) {
        __m256 vw = _mm256_loadu_ps(wrow + jj);
        __m256 vo = _mm256_loadu_ps(orow + jj);
        _mm256_storeu_ps(orow + jj, _mm256_add_ps(vo, _mm256_mul_ps(av, vw)));
      }
      const float avs = arow[kk];
      for (; jj < n; ++jj) orow[jj] += avs * wrow[jj];
    }
  }
}

}  // namespace opflow::kernels::avx2

#endif  // OPFLOW_HAVE_AVX2_LANE
