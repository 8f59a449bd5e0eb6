// SPDX-FileCopyrightText: 2026 The OpFlow Authors
// SPDX-License-Identifier: Apache-2.0

#include "opflow/builders.hpp"

namespace opflow::builders {

namespace {

struct Builder {
  GraphDescription desc;
  Dtype dtype;

  std::string tensor(const std::string& name, std::vector<int64_t> shape, BatchSemantics batch,
                     TensorRole role) {
    TensorDecl t;
    t.name = name;
    t.shape = std::move(shape);
    t.batch = batch;
    t.dtype = dtype;
    t.role = role;
    desc.tensors.push_back(std::move(t));
    return name;
  }

  void op(const std::string& name, OperatorKind kind, std::vector<std::string> ins,
          std::vector<std::string> outs, const std::string& module_path, CostParams cost,
          OpAttrs attrs = {}) {
    OpDecl o;
    o.name = name;
    o.kind = kind;
    o.inputs = std::move(ins);
    o.outputs = std::move(outs);
    o.module_path = module_path;
    o.cost = cost;
    o.attrs = attrs;
    desc.operators.push_back(std::move(o));
  }
};

}  // namespace

GraphDescription dense_tp_graph(int layers, int64_t batch, int64_t hidden,
                                const KindCosts& costs, Dtype dtype) {
  Builder b{{}, dtype};
  std::string cur = b.tensor("x", {batch, hidden}, BatchSemantics::kBatched,
                             TensorRole::kGraphInput);
  for (int l = 0; l < layers; ++l) {
    const std::string p = "layer" + std::to_string(l);
    const bool last = l == layers - 1;
    std::string w = b.tensor(p + ".w", {hidden, hidden}, BatchSemantics::kReplicated,
                             TensorRole::kWeight);
    std::string a = b.tensor(p + ".attn_out", {batch, hidden}, BatchSemantics::kBatched,
                             TensorRole::kIntermediate);
    std::string m = b.tensor(p + ".mm_out", {batch, hidden}, BatchSemantics::kBatched,
                             TensorRole::kIntermediate);
    std::string r = b.tensor(p + ".ar_out", {batch, hidden}, BatchSemantics::kBatched,
                             TensorRole::kIntermediate);
    std::string o = b.tensor(p + ".out", {batch, hidden}, BatchSemantics::kBatched,
                             last ? TensorRole::kGraphOutput : TensorRole::kIntermediate);
    b.op(p + ".attn", OperatorKind::kAttention, {cur}, {a}, p + ".attn", costs.attention);
    b.op(p + ".mlp", OperatorKind::kMatMul, {a, w}, {m}, p + ".mlp", costs.matmul);
    OpAttrs ar;
    ar.world_size = 2;
    b.op(p + ".comm", OperatorKind::kAllReduce, {m}, {r}, p + ".comm", costs.allreduce, ar);
    b.op(p + ".norm", OperatorKind::kRowScale, {r}, {o}, p + ".norm", costs.rowscale);
    cur = o;
  }
  return b.desc;
}

GraphDescription moe_ep_graph(int layers, int64_t batch, int64_t hidden,
                              const KindCosts& costs, Dtype dtype) {
  Builder b{{}, dtype};
  std::string cur = b.tensor("x", {batch, hidden}, BatchSemantics::kBatched,
                             TensorRole::kGraphInput);
  for (int l = 0; l < layers; ++l) {
    const std::string p = "layer" + std::to_string(l);
    const bool last = l == layers - 1;
    std::string w = b.tensor(p + ".w_exp", {hidden, hidden}, BatchSemantics::kReplicated,
                             TensorRole::kWeight);
    std::string a = b.tensor(p + ".attn_out", {batch, hidden}, BatchSemantics::kBatched,
                             TensorRole::kIntermediate);
    std::string d = b.tensor(p + ".disp_out", {batch, hidden}, BatchSemantics::kBatched,
                             TensorRole::kIntermediate);
    std::string e = b.tensor(p + ".exp_out", {batch, hidden}, BatchSemantics::kBatched,
                             TensorRole::kIntermediate);
    std::string c = b.tensor(p + ".comb_out", {batch, hidden}, BatchSemantics::kBatched,
                             TensorRole::kIntermediate);
    std::string o = b.tensor(p + ".out", {batch, hidden}, BatchSemantics::kBatched,
                             last ? TensorRole::kGraphOutput : TensorRole::kIntermediate);
    b.op(p + ".attn", OperatorKind::kAttention, {cur}, {a}, p + ".attn", costs.attention);
    OpAttrs a2a;
    a2a.seed = static_cast<uint64_t>(l) + 1;
    b.op(p + ".dispatch", OperatorKind::kAllToAll, {a}, {d}, p + ".moe.dispatch",
         costs.alltoall, a2a);
    b.op(p + ".experts", OperatorKind::kMatMul, {d, w}, {e}, p + ".moe.experts", costs.matmul);
    OpAttrs ar;
    ar.world_size = 2;
    b.op(p + ".combine", OperatorKind::kAllReduce, {e}, {c}, p + ".moe.combine",
         costs.allreduce, ar);
    b.op(p + ".post", OperatorKind::kRowScale, {c}, {o}, p + ".post", costs.rowscale);
    cur = o;
  }
  return b.desc;
}

GraphDescription fuse_chain_graph(int layers, int64_t batch, int64_t hidden,
                                  const KindCosts& costs, Dtype dtype) {
  Builder b{{}, dtype};
  std::string cur = b.tensor("x", {batch, hidden}, BatchSemantics::kBatched,
                             TensorRole::kGraphInput);
  for (int l = 0; l < layers; ++l) {
    const std::string p = "layer" + std::to_string(l);
    const bool last = l == layers - 1;
    std::string w = b.tensor(p + ".w", {hidden, hidden}, BatchSemantics::kReplicated,
                             TensorRole::kWeight);
    std::string m = b.tensor(p + ".mm_out", {batch, hidden}, BatchSemantics::kBatched,
                             TensorRole::kIntermediate);
    std::string r = b.tensor(p + ".ar_out", {batch, hidden}, BatchSemantics::kBatched,
                             TensorRole::kIntermediate);
    std::string o = b.tensor(p + ".out", {batch, hidden}, BatchSemantics::kBatched,
                             last ? TensorRole::kGraphOutput : TensorRole::kIntermediate);
    b.op(p + ".mlp", OperatorKind::kMatMul, {cur, w}, {m}, p + ".mlp", costs.matmul);
    OpAttrs ar;
    ar.world_size = 2;
    b.op(p + ".comm", OperatorKind::kAllReduce, {m}, {r}, p + ".comm", costs.allreduce, ar);
    b.op(p + ".norm", OperatorKind::kRowScale, {r}, {o}, p + ".norm", costs.rowscale);
    cur = o;
  }
  return b.desc;
}

}  // namespace opflow::builders
