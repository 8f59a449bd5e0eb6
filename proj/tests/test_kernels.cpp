// SPDX-FileCopyrightText: 2026 The OpFlow Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "opflow/kernels.hpp"

using namespace opflow;

namespace {

std::vector<int64_t> rand_i64(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int64_t> dist(-1000, 1000);
  std::vector<int64_t> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

std::vector<float> rand_f32(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<float> dist(-2.0f, 2.0f);
  std::vector<float> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

}  // namespace

TEST_CASE("scalar kernels: basic semantics") {
  // Frozen hand-computed values.
  const int64_t a[4] = {1, 2, -3, 4};
  const int64_t b[4] = {3, 4, 5, -6};
  int64_t out[4];
  kernels::scalar::add_i64(a, b, out, 4);
  CHECK(out[0] == 4);
  CHECK(out[1] == 6);
  CHECK(out[2] == 2);
  CHECK(out[3] == -2);

  kernels::scalar::scale_i64(a, 2, out, 4);
  CHECK(out[0] == 2);
  CHECK(out[3] == 8);

  // [1,2] x [[1,0,2],[0,1,3]] = [1,2,8]
  const int64_t m[2] = {1, 2};
  const int64_t w[6] = {1, 0, 2, 0, 1, 3};
  int64_t mm[3];
  kernels::scalar::matmul_i64(m, w, mm, 1, 2, 3);
  CHECK(mm[0] == 1);
  CHECK(mm[1] == 2);
  CHECK(mm[2] == 8);

  // row_scale: divide by max(1, max|row|)
  const int64_t rs_in[6] = {2, -8, 4, 0, 0, 0};
  int64_t rs_out[6];
  kernels::row_scale_i64(rs_in, rs_out, 2, 3);
  CHECK(rs_out[0] == 0);   // 2/8
  CHECK(rs_out[1] == -1);  // -8/8
  CHECK(rs_out[2] == 0);   // 4/8
  CHECK(rs_out[3] == 0);   // zero row divides by 1

  const int64_t ps_in[4] = {1, 2, 3, 4};
  int64_t ps_out[4];
  kernels::row_prefix_sum_i64(ps_in, ps_out, 2, 2);
  CHECK(ps_out[0] == 1);
  CHECK(ps_out[1] == 3);
  CHECK(ps_out[2] == 3);
  CHECK(ps_out[3] == 7);

  const uint32_t perm[3] = {2, 0, 1};
  const int64_t px[3] = {10, 20, 30};
  int64_t py[3];
  kernels::permute_cols_i64(px, py, 1, 3, perm);
  CHECK(py[0] == 30);
  CHECK(py[1] == 10);
  CHECK(py[2] == 20);
}

TEST_CASE("avx2 lane is bit-equivalent to scalar") {
  if (!kernels::avx2_supported()) {
    MESSAGE("AVX2 not supported on this CPU; lane equivalence not exercised");
    return;
  }
#if OPFLOW_HAVE_AVX2_LANE
  std::mt19937_64 rng(2026);
  // Sizes chosen to hit vector bodies and scalar tails.
  for (std::size_t n : {1u, 3u, 4u, 7u, 8u, 9u, 31u, 64u, 257u}) {
    auto a = rand_i64(n, rng), b = rand_i64(n, rng);
    std::vector<int64_t> s(n), v(n);
    kernels::scalar::add_i64(a.data(), b.data(), s.data(), n);
    kernels::avx2::add_i64(a.data(), b.data(), v.data(), n);
    CHECK(std::memcmp(s.data(), v.data(), n * 8) == 0);

    kernels::scalar::scale_i64(a.data(), -37, s.data(), n);
    kernels::avx2::scale_i64(a.data(), -37, v.data(), n);
    CHECK(std::memcmp(s.data(), v.data(), n * 8) == 0);

    auto af = rand_f32(n, rng), bf = rand_f32(n, rng);
    std::vector<float> sf(n), vf(n);
    kernels::scalar::add_f32(af.data(), bf.data(), sf.data(), n);
    kernels::avx2::add_f32(af.data(), bf.data(), vf.data(), n);
    CHECK(std::memcmp(sf.data(), vf.data(), n * 4) == 0);

    kernels::scalar::scale_f32(af.data(), 1.37f, sf.data(), n);
    kernels::avx2::scale_f32(af.data(), 1.37f, vf.data(), n);
    CHECK(std::memcmp(sf.data(), vf.data(), n * 4) == 0);
  }

  for (auto [rows, k, n] : std::vector<std::tuple<int, int, int>>{
           {1, 1, 1}, {2, 3, 5}, {4, 8, 8}, {7, 16, 13}, {16, 32, 24}}) {
    auto a = rand_i64(static_cast<std::size_t>(rows * k), rng);
    auto w = rand_i64(static_cast<std::size_t>(k * n), rng);
    std::vector<int64_t> s(static_cast<std::size_t>(rows * n)), v(s.size());
    kernels::scalar::matmul_i64(a.data(), w.data(), s.data(), rows, k, n);
    kernels::avx2::matmul_i64(a.data(), w.data(), v.data(), rows, k, n);
    CHECK(std::memcmp(s.data(), v.data(), s.size() * 8) == 0);

    auto af = rand_f32(static_cast<std::size_t>(rows * k), rng);
    auto wf = rand_f32(static_cast<std::size_t>(k * n), rng);
    std::vector<float> sf(static_cast<std::size_t>(rows * n)), vf(sf.size());
    kernels::scalar::matmul_f32(af.data(), wf.data(), sf.data(), rows, k, n);
    kernels::avx2::matmul_f32(af.data(), wf.data(), vf.data(), rows, k, n);
    CHECK(std::memcmp(sf.data(), vf.data(), sf.size() * 4) == 0);
  }

  for (auto [rows, cols] : std::vector<std::pair<int, int>>{{1, 1}, {3, 7}, {5, 8}, {4, 33}}) {
    auto x = rand_f32(static_cast<std::size_t>(rows * cols), rng);
    std::vector<float> s(x.size()), v(x.size());
    kernels::scalar::row_scale_f32(x.data(), s.data(), rows, cols);
    kernels::avx2::row_scale_f32(x.data(), v.data(), rows, cols);
    CHECK(std::memcmp(s.data(), v.data(), s.size() * 4) == 0);
  }
#endif
}

TEST_CASE("i64 multiply emulation matches on extreme magnitudes") {
  if (!kernels::avx2_supported()) return;
#if OPFLOW_HAVE_AVX2_LANE
  // Wraparound behavior must match scalar exactly.
  std::vector<int64_t> a = {INT64_MAX, INT64_MIN, -1, 123456789012345,
                            -987654321098765, 1, 0, 42};
  std::vector<int64_t> s(a.size()), v(a.size());
  for (int64_t f : {INT64_MAX, INT64_MIN, int64_t{-3}, int64_t{1000000007}}) {
    kernels::scalar::scale_i64(a.data(), f, s.data(), a.size());
    kernels::avx2::scale_i64(a.data(), f, v.data(), a.size());
    CHECK(std::memcmp(s.data(), v.data(), a.size() * 8) == 0);
  }
#endif
}

TEST_CASE("runtime dispatch: forcing backends") {
  const kernels::Backend initial = kernels::active_backend();
  CHECK(kernels::force_backend(kernels::Backend::kScalar));
  CHECK(kernels::active_backend() == kernels::Backend::kScalar);
  if (kernels::avx2_supported()) {
    CHECK(kernels::force_backend(kernels::Backend::kAvx2));
    CHECK(kernels::active_backend() == kernels::Backend::kAvx2);
  } else {
    CHECK_FALSE(kernels::force_backend(kernels::Backend::kAvx2));
  }
  kernels::force_backend(initial);
}
