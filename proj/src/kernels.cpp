// SPDX-FileCopyrightText: 2026 The OpFlow Authors
// SPDX-License-Identifier: Apache-2.0

#include "opflow/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "opflow/common.hpp"

namespace opflow::kernels {

namespace {

struct KernelTable {
  void (*add_i64)(const int64_t*, const int64_t*, int64_t*, std::size_t);
  void (*add_f32)(const float*, const float*, float*, std::size_t);
  void (*scale_i64)(const int64_t*, int64_t, int64_t*, std::size_t);
  void (*scale_f32)(const float*, float, float*, std::size_t);
  void (*row_scale_f32)(const float*, float*, std::size_t, std::size_t);
  void (*matmul_i64)(const int64_t*, const int64_t*, int64_t*, std::size_t, std::size_t,
                     std::size_t);
  void (*matmul_f32)(const float*, const float*, float*, std::size_t, std::size_t, std::size_t);
};

constexpr KernelTable kScalarTable = {
    scalar::add_i64, scalar::add_f32,    scalar::scale_i64, scalar::scale_f32,
    scalar::row_scale_f32, scalar::matmul_i64, scalar::matmul_f32,
};

#if OPFLOW_HAVE_AVX2_LANE
constexpr KernelTable kAvx2Table = {
    avx2::add_i64, avx2::add_f32,    avx2::scale_i64, avx2::scale_f32,
    avx2::row_scale_f32, avx2::matmul_i64, avx2::matmul_f32,
};
#endif

struct Dispatch {
  Backend backend;
  const KernelTable* table;
};

Dispatch make_default_dispatch() {
  const char* env = std::getenv("OPF_SIMD");
  bool want_scalar = env && std::strcmp(env, "scalar") == 0;
  bool want_avx2 = env && std::strcmp(env, "avx2") == 0;
#if OPFLOW_HAVE_AVX2_LANE
  if (!want_scalar && (want_avx2 || avx2_supported())) {
    if (want_avx2 && !avx2_supported()) {
      log_warn("OPF_SIMD=avx2 requested but CPU lacks AVX2; using scalar kernels");
    } else {
      return {Backend::kAvx2, &kAvx2Table};
    }
  }
#else
  if (want_avx2) log_warn("AVX2 lane not built on this architecture; using scalar kernels");
#endif
  (void)want_avx2;
  return {Backend::kScalar, &kScalarTable};
}

Dispatch& dispatch() {
  static Dispatch d = make_default_dispatch();
  return d;
}

}  // namespace

bool avx2_supported() {
#if OPFLOW_HAVE_AVX2_LANE
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

Backend active_backend() { return dispatch().backend; }

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::kScalar: return "scalar";
    case Backend::kAvx2: return "avx2";
  }
  return "?";
}

bool force_backend(Backend b) {
  if (b == Backend::kScalar) {
    dispatch() = {Backend::kScalar, &kScalarTable};
    return true;
  }
#if OPFLOW_HAVE_AVX2_LANE
  if (avx2_supported()) {
    dispatch() = {Backend::kAvx2, &kAvx2Table};
    return true;
  }
#endif
  return false;
}

void add_i64(const int64_t* a, const int64_t* b, int64_t* out, std::size_t n) {
  dispatch().table->add_i64(a, b, out, n);
}
void add_f32(const float* a, const float* b, float* out, std::size_t n) {
  dispatch().table->add_f32(a, b, out, n);
}
void scale_i64(const int64_t* x, int64_t factor, int64_t* out, std::size_t n) {
  dispatch().table->scale_i64(x, factor, out, n);
}
void scale_f32(const float* x, float factor, float* out, std::size_t n) {
  dispatch().table->scale_f32(x, factor, out, n);
}
void row_scale_f32(const float* x, float* out, std::size_t rows, std::size_t cols) {
  dispatch().table->row_scale_f32(x, out, rows, cols);
}
void matmul_i64(const int64_t* a, const int64_t* w, int64_t* out, std::size_t rows,
                std::size_t k, std::size_t n) {
  dispatch().table->matmul_i64(a, w, out, rows, k, n);
}
void matmul_f32(const float* a, const float* w, float* out, std::size_t rows, std::size_t k,
                std::size_t n) {
  dispatch().table->matmul_f32(a, w, out, rows, k, n);
}

}  // namespace opflow::kernels
