// SPDX-FileCopyrightText: 2026 The OpFlow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "opflow/common.hpp"
#include "opflow/tensor.hpp"

namespace opflow {

enum class TensorRole { kGraphInput, kWeight, kIntermediate, kGraphOutput };
enum class OperatorKind { kMatMul, kElemAdd, kRowScale, kAllReduce, kAllToAll, kAttention, kCustom };
enum class ResourceClass { kCompute, kMemory, kNetwork };
constexpr int kNumResourceClasses = 3;

const char* kind_name(OperatorKind k);
const char* resource_class_name(ResourceClass c);
ResourceClass default_resource_class(OperatorKind k);

struct CostParams {
  double alpha = 0.0;  // fixed per-invocation cost (covers the per-micro-batch weight read)
  double beta = 0.0;   // per-token slope
};

struct TensorMeta {
  std::string name;
  std::vector<int64_t> shape;  // for Batched tensors shape[0] is the nominal batch extent
  BatchSemantics batch = BatchSemantics::kBatched;
  Dtype dtype = Dtype::kI64;
  TensorRole role = TensorRole::kIntermediate;
  // Filled in by build_graph.
  int32_t producer = -1;
  std::vector<int32_t> consumers;
};

struct OpAttrs {
  int64_t world_size = 1;    // AllReduce
  uint64_t seed = 0;         // AllToAll column permutation
  std::string custom_name;   // Custom reference function lookup key
};

struct OperatorNode {
  std::string name;
  OperatorKind kind = OperatorKind::kElemAdd;
  std::vector<int32_t> inputs;
  std::vector<int32_t> outputs;
  ResourceClass resource_class = ResourceClass::kCompute;
  std::string module_path;
  std::vector<std::string> region_tags;
  CostParams cost;
  OpAttrs attrs;
};

// Immutable after build_graph; ops are stored in a valid topological order.
struct Graph {
  std::vector<TensorMeta> tensors;
  std::vector<OperatorNode> ops;
  std::vector<int32_t> graph_inputs;
  std::vector<int32_t> weights;
  std::vector<int32_t> graph_outputs;
  std::unordered_map<std::string, int32_t> tensor_index;
  std::unordered_map<std::string, int32_t> op_index;

  int32_t tensor_id(const std::string& name) const {
    auto it = tensor_index.find(name);
    if (it == tensor_index.end()) fail(Errc::UnknownTensor, "no tensor named '" + name + "'");
    return it->second;
  }
  bool is_output(int32_t t) const { return tensors[t].role == TensorRole::kGraphOutput; }
};

// Declarative graph description (the JSON document shape, see docs/).
struct TensorDecl {
  std::string name;
  std::vector<int64_t> shape;
  BatchSemantics batch = BatchSemantics::kBatched;
  Dtype dtype = Dtype::kI64;
  TensorRole role = TensorRole::kIntermediate;
};

struct OpDecl {
  std::string name;
  OperatorKind kind = OperatorKind::kElemAdd;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::optional<ResourceClass> resource_class;
  std::string module_path;
  std::vector<std::string> region_tags;
  std::optional<CostParams> cost;
  OpAttrs attrs;
};

struct GraphDescription {
  std::vector<TensorDecl> tensors;
  std::vector<OpDecl> operators;
};

// Validates and topologically orders the description.
// Throws CycleDetected, UnknownTensor, ShapeMismatch, DuplicateId, ConfigError.
Graph build_graph(const GraphDescription& desc);

// Shape/semantics inference for one operator; `rows` substitutes the batch
// extent of Batched inputs. Returns output (shape, batch) pairs in decl order.
std::vector<std::pair<std::vector<int64_t>, BatchSemantics>> infer_op_outputs(
    OperatorKind kind, const std::vector<const TensorMeta*>& inputs, int64_t rows,
    const std::vector<const TensorMeta*>& declared_outputs);

}  // namespace opflow
