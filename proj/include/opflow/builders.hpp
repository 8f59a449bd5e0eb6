// SPDX-FileCopyrightText: 2026 The OpFlow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "opflow/graph.hpp"

// Canonical model-shaped graph descriptions. These back the shipped scenario
// files and the test suites; cost parameters are deliberately explicit so
// scenarios can tune communication shares.

namespace opflow::builders {

struct KindCosts {
  CostParams attention;
  CostParams matmul;
  CostParams allreduce;
  CostParams alltoall;
  CostParams rowscale;
};

// Attention -> MatMul -> AllReduce -> RowScale per layer (tensor-parallel
// dense block). Module paths: layer<i>.attn / .mlp / .comm / .norm.
GraphDescription dense_tp_graph(int layers, int64_t batch, int64_t hidden,
                                const KindCosts& costs, Dtype dtype = Dtype::kI64);

// Attention -> AllToAll(dispatch) -> MatMul(experts) -> AllReduce(combine)
// -> RowScale per layer (expert-parallel MoE block). Module paths:
// layer<i>.attn / .moe.dispatch / .moe.experts / .moe.combine / .post.
GraphDescription moe_ep_graph(int layers, int64_t batch, int64_t hidden,
                              const KindCosts& costs, Dtype dtype = Dtype::kI64);

// MatMul -> AllReduce -> RowScale per layer (fusion target: the AllReduce ->
// RowScale pair). Module paths: layer<i>.mlp / .comm / .norm.
GraphDescription fuse_chain_graph(int layers, int64_t batch, int64_t hidden,
                                  const KindCosts& costs, Dtype dtype = Dtype::kI64);

}  // namespace opflow::builders
