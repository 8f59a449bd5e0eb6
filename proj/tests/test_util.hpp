// SPDX-FileCopyrightText: 2026 The OpFlow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <set>
#include <unordered_map>
#include <random>
#include <vector>

#include "opflow/tensor.hpp"

namespace opflow::testutil {

inline TensorValue random_i64(std::vector<int64_t> shape, std::mt19937_64& rng, int64_t lo = -4,
                              int64_t hi = 4,
                              BatchSemantics batch = BatchSemantics::kBatched) {
  TensorValue v = TensorValue::alloc(std::move(shape), Dtype::kI64, batch, nullptr);
  std::uniform_int_distribution<int64_t> dist(lo, hi);
  for (int64_t i = 0; i < v.numel(); ++i) v.i64()[i] = dist(rng);
  return v;
}

inline TensorValue random_f32(std::vector<int64_t> shape, std::mt19937_64& rng,
                              BatchSemantics batch = BatchSemantics::kBatched) {
  TensorValue v = TensorValue::alloc(std::move(shape), Dtype::kF32, batch, nullptr);
  std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
  for (int64_t i = 0; i < v.numel(); ++i) v.f32()[i] = dist(rng);
  return v;
}

}  // namespace opflow::testutil

#include "opflow/graph.hpp"

namespace opflow::testutil {

// Random layered graph: every batched tensor is [B,H], operators draw inputs
// from earlier tensors, unconsumed tensors become graph outputs. Module paths
// cycle over m0..m3 so module rules have something to bite on.
struct RandomGraphParams {
  int min_ops = 4;
  int max_ops = 24;
  int64_t batch = 8;
  int64_t hidden = 4;
  Dtype dtype = Dtype::kI64;
};

inline GraphDescription random_graph(std::mt19937_64& rng, const RandomGraphParams& p = {}) {
  GraphDescription d;
  const int64_t B = p.batch, H = p.hidden;
  d.tensors.push_back({"x", {B, H}, BatchSemantics::kBatched, p.dtype, TensorRole::kGraphInput});
  std::vector<std::string> batched = {"x"};
  std::uniform_int_distribution<int> nops_dist(p.min_ops, p.max_ops);
  const int n_ops = nops_dist(rng);
  int weight_count = 0;
  for (int i = 0; i < n_ops; ++i) {
    static const OperatorKind kinds[] = {OperatorKind::kMatMul,   OperatorKind::kElemAdd,
                                         OperatorKind::kRowScale, OperatorKind::kAllReduce,
                                         OperatorKind::kAllToAll, OperatorKind::kAttention};
    std::uniform_int_distribution<int> kind_dist(0, 5);
    OpDecl o;
    o.kind = kinds[kind_dist(rng)];
    o.name = "op" + std::to_string(i);
    o.module_path = "m" + std::to_string(i % 4) + ".op" + std::to_string(i);
    std::uniform_int_distribution<std::size_t> pick(0, batched.size() - 1);
    switch (o.kind) {
      case OperatorKind::kMatMul: {
        std::string w = "w" + std::to_string(weight_count++);
        d.tensors.push_back({w, {H, H}, BatchSemantics::kReplicated, p.dtype, TensorRole::kWeight});
        o.inputs = {batched[pick(rng)], w};
        break;
      }
      case OperatorKind::kElemAdd:
        o.inputs = {batched[pick(rng)], batched[pick(rng)]};
        break;
      case OperatorKind::kAllReduce:
        o.inputs = {batched[pick(rng)]};
        o.attrs.world_size = 2;
        break;
      case OperatorKind::kAllToAll:
        o.inputs = {batched[pick(rng)]};
        o.attrs.seed = static_cast<uint64_t>(i) + 17;
        break;
      default:
        o.inputs = {batched[pick(rng)]};
        break;
    }
    std::string out = "t" + std::to_string(i);
    d.tensors.push_back({out, {B, H}, BatchSemantics::kBatched, p.dtype, TensorRole::kIntermediate});
    o.outputs = {out};
    std::uniform_real_distribution<double> cost(0.5, 4.0);
    o.cost = CostParams{cost(rng), cost(rng) / 8.0};
    d.operators.push_back(std::move(o));
    batched.push_back(out);
  }
  // Tensors without consumers become graph outputs.
  std::set<std::string> consumed;
  for (const OpDecl& o : d.operators)
    for (const std::string& in : o.inputs) consumed.insert(in);
  for (TensorDecl& t : d.tensors)
    if (t.role == TensorRole::kIntermediate && !consumed.count(t.name))
      t.role = TensorRole::kGraphOutput;
  return d;
}

inline std::unordered_map<std::string, TensorValue> random_bindings(const GraphDescription& d,
                                                                    std::mt19937_64& rng,
                                                                    int64_t rows) {
  std::unordered_map<std::string, TensorValue> named;
  for (const TensorDecl& t : d.tensors) {
    std::vector<int64_t> shape = t.shape;
    if (t.role == TensorRole::kGraphInput) {
      if (t.batch == BatchSemantics::kBatched) shape[0] = rows;
      named[t.name] = t.dtype == Dtype::kI64
                          ? random_i64(shape, rng, -4, 4, t.batch)
                          : random_f32(shape, rng, t.batch);
    } else if (t.role == TensorRole::kWeight) {
      named[t.name] = t.dtype == Dtype::kI64
                          ? random_i64(shape, rng, -4, 4, t.batch)
                          : random_f32(shape, rng, t.batch);
    }
  }
  return named;
}

}  // namespace opflow::testutil
