// SPDX-FileCopyrightText: 2026 The OpFlow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "opflow/graph.hpp"
#include "opflow/tensor.hpp"

namespace opflow {

// Reference semantics for Custom operators and fused replacements. The
// function receives resolved input values and must return one value per
// declared output, shaped for the instance's batch rows.
using CustomFn =
    std::function<std::vector<TensorValue>(const std::vector<TensorValue>&, int64_t rows)>;

struct CustomRegistry {
  std::unordered_map<std::string, CustomFn> fns;
  const CustomFn* find(const std::string& name) const {
    auto it = fns.find(name);
    return it == fns.end() ? nullptr : &it->second;
  }
};

using Bindings = std::unordered_map<int32_t, TensorValue>;

// Evaluates one operator, writing results into preallocated destinations.
// Destinations may be views (e.g. merge-buffer slices); kernels write in
// place, which is what makes prealloc redirection zero-copy.
void eval_op_into(const OperatorNode& op, const std::vector<TensorValue>& inputs,
                  std::vector<TensorValue>& outputs, const CustomRegistry& customs);

// The correctness oracle: pure, deterministic, topological-order evaluation.
// Returns bindings for all GraphOutput tensors.
Bindings eval_reference(const Graph& g, const Bindings& inputs,
                        const CustomRegistry& customs = {}, const MeterPtr& meter = nullptr);

// Deterministic column permutation used by AllToAll (seeded, length cols).
std::vector<uint32_t> alltoall_permutation(uint64_t seed, std::size_t cols);

// Convenience for tests/CLI: bind by tensor name.
Bindings bind_by_name(const Graph& g,
                      const std::unordered_map<std::string, TensorValue>& named);

}  // namespace opflow
