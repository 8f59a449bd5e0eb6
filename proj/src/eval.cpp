// SPDX-FileCopyrightText: 2026 The OpFlow Authors
// SPDX-License-Identifier: Apache-2.0

#include "opflow/eval.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "opflow/kernels.hpp"

namespace opflow {

std::vector<uint32_t> alltoall_permutation(uint64_t seed, std::size_t cols) {
  std::vector<uint32_t> perm(cols);
  std::iota(perm.begin(), perm.end(), 0u);
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + cols);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

namespace {

void check_value_shape(const TensorValue& v, const TensorValue& want, const std::string& what) {
  if (v.dtype != want.dtype || v.shape != want.shape)
    fail(Errc::ShapeMismatch, what + ": value shape/dtype mismatch");
}

}  // namespace

void eval_op_into(const OperatorNode& op, const std::vector<TensorValue>& in,
                  std::vector<TensorValue>& out, const CustomRegistry& customs) {
  switch (op.kind) {
    case OperatorKind::kMatMul: {
      const TensorValue& a = in[0];
      const TensorValue& w = in[1];
      const std::size_t rows = static_cast<std::size_t>(a.shape[0]);
      const std::size_t k = static_cast<std::size_t>(a.shape[1]);
      const std::size_t n = static_cast<std::size_t>(w.shape[1]);
      if (a.dtype == Dtype::kI64)
        kernels::matmul_i64(a.i64(), w.i64(), out[0].i64(), rows, k, n);
      else
        kernels::matmul_f32(a.f32(), w.f32(), out[0].f32(), rows, k, n);
      break;
    }
    case OperatorKind::kElemAdd: {
      const std::size_t n = static_cast<std::size_t>(in[0].numel());
      if (in[0].dtype == Dtype::kI64)
        kernels::add_i64(in[0].i64(), in[1].i64(), out[0].i64(), n);
      else
        kernels::add_f32(in[0].f32(), in[1].f32(), out[0].f32(), n);
      break;
    }
    case OperatorKind::kRowScale: {
      const std::size_t rows = static_cast<std::size_t>(in[0].rows());
      const std::size_t cols = static_cast<std::size_t>(in[0].row_elems());
      if (in[0].dtype == Dtype::kI64)
        kernels::row_scale_i64(in[0].i64(), out[0].i64(), rows, cols);
      else
        kernels::row_scale_f32(in[0].f32(), out[0].f32(), rows, cols);
      break;
    }
    case OperatorKind::kAllReduce: {
      const std::size_t n = static_cast<std::size_t>(in[0].numel());
      if (in[0].dtype == Dtype::kI64)
        kernels::scale_i64(in[0].i64(), op.attrs.world_size, out[0].i64(), n);
      else
        kernels::scale_f32(in[0].f32(), static_cast<float>(op.attrs.world_size), out[0].f32(), n);
      break;
    }
    case OperatorKind::kAllToAll: {
      const std::size_t rows = static_cast<std::size_t>(in[0].rows());
      const std::size_t cols = static_cast<std::size_t>(in[0].row_elems());
      const std::vector<uint32_t> perm = alltoall_permutation(op.attrs.seed, cols);
      if (in[0].dtype == Dtype::kI64)
        kernels::permute_cols_i64(in[0].i64(), out[0].i64(), rows, cols, perm.data());
      else
        kernels::permute_cols_f32(in[0].f32(), out[0].f32(), rows, cols, perm.data());
      break;
    }
    case OperatorKind::kAttention: {
      const std::size_t rows = static_cast<std::size_t>(in[0].rows());
      const std::size_t cols = static_cast<std::size_t>(in[0].row_elems());
      if (in[0].dtype == Dtype::kI64)
        kernels::row_prefix_sum_i64(in[0].i64(), out[0].i64(), rows, cols);
      else
        kernels::row_prefix_sum_f32(in[0].f32(), out[0].f32(), rows, cols);
      break;
    }
    case OperatorKind::kCustom: {
      const CustomFn* fn = customs.find(op.attrs.custom_name);
      if (!fn)
        fail(Errc::ConfigError, "no custom function registered for '" + op.attrs.custom_name + "'");
      int64_t rows = 1;
      for (const TensorValue& v : in)
        if (v.batch == BatchSemantics::kBatched) rows = v.rows();
      std::vector<TensorValue> results = (*fn)(in, rows);
      if (results.size() != out.size())
        fail(Errc::ShapeMismatch, "custom '" + op.name + "' returned wrong output count");
      for (std::size_t i = 0; i < results.size(); ++i) {
        check_value_shape(results[i], out[i], "custom '" + op.name + "'");
        results[i].copy_into(out[i]);
      }
      break;
    }
  }
}

Bindings eval_reference(const Graph& g, const Bindings& inputs, const CustomRegistry& customs,
                        const MeterPtr& meter) {
  Bindings values;
  int64_t rows = 0;
  auto bind_external = [&](int32_t t) {
    auto it = inputs.find(t);
    if (it == inputs.end())
      fail(Errc::MissingBinding, "no binding for tensor '" + g.tensors[t].name + "'");
    const TensorMeta& m = g.tensors[t];
    const TensorValue& v = it->second;
    if (v.dtype != m.dtype) fail(Errc::ShapeMismatch, "binding dtype mismatch for '" + m.name + "'");
    if (v.shape.size() != m.shape.size())
      fail(Errc::ShapeMismatch, "binding rank mismatch for '" + m.name + "'");
    for (std::size_t d = m.batch == BatchSemantics::kBatched ? 1 : 0; d < m.shape.size(); ++d)
      if (v.shape[d] != m.shape[d])
        fail(Errc::ShapeMismatch, "binding extent mismatch for '" + m.name + "'");
    if (m.batch == BatchSemantics::kBatched) {
      if (rows == 0) rows = v.rows();
      if (v.rows() != rows) fail(Errc::ShapeMismatch, "batched inputs disagree on rows");
    }
    values.emplace(t, v);
  };
  for (int32_t t : g.graph_inputs) bind_external(t);
  for (int32_t t : g.weights) bind_external(t);
  if (rows == 0) rows = 1;

  for (const OperatorNode& op : g.ops) {
    std::vector<TensorValue> in;
    in.reserve(op.inputs.size());
    for (int32_t t : op.inputs) {
      auto it = values.find(t);
      if (it == values.end())
        fail(Errc::MissingBinding, "tensor '" + g.tensors[t].name + "' not materialized");
      in.push_back(it->second);
    }
    std::vector<const TensorMeta*> in_meta, out_meta;
    for (int32_t t : op.inputs) in_meta.push_back(&g.tensors[t]);
    for (int32_t t : op.outputs) out_meta.push_back(&g.tensors[t]);
    auto inferred = infer_op_outputs(op.kind, in_meta, rows, out_meta);
    std::vector<TensorValue> out;
    out.reserve(op.outputs.size());
    for (std::size_t j = 0; j < op.outputs.size(); ++j) {
      out.push_back(TensorValue::alloc(inferred[j].first, g.tensors[op.outputs[j]].dtype,
                                       inferred[j].second, meter));
    }
    eval_op_into(op, in, out, customs);
    for (std::size_t j = 0; j < op.outputs.size(); ++j) values[op.outputs[j]] = out[j];
  }

  Bindings result;
  for (int32_t t : g.graph_outputs) {
    auto it = values.find(t);
    if (it == values.end()) fail(Errc::MissingBinding, "graph output never produced");
    result.emplace(t, it->second);
  }
  return result;
}

Bindings bind_by_name(const Graph& g,
                      const std::unordered_map<std::string, TensorValue>& named) {
  Bindings b;
  for (const auto& [name, value] : named) b.emplace(g.tensor_id(name), value);
  return b;
}

}  // namespace opflow
