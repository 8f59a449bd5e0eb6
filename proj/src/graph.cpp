// SPDX-FileCopyrightText: 2026 The OpFlow Authors
// SPDX-License-Identifier: Apache-2.0

#include "opflow/graph.hpp"

#include <algorithm>
#include <set>

namespace opflow {

const char* kind_name(OperatorKind k) {
  switch (k) {
    case OperatorKind::kMatMul: return "MatMul";
    case OperatorKind::kElemAdd: return "ElemAdd";
    case OperatorKind::kRowScale: return "RowScale";
    case OperatorKind::kAllReduce: return "AllReduce";
    case OperatorKind::kAllToAll: return "AllToAll";
    case OperatorKind::kAttention: return "Attention";
    case OperatorKind::kCustom: return "Custom";
  }
  return "?";
}

const char* resource_class_name(ResourceClass c) {
  switch (c) {
    case ResourceClass::kCompute: return "compute";
    case ResourceClass::kMemory: return "memory";
    case ResourceClass::kNetwork: return "network";
  }
  return "?";
}

ResourceClass default_resource_class(OperatorKind k) {
  switch (k) {
    case OperatorKind::kMatMul: return ResourceClass::kCompute;
    case OperatorKind::kElemAdd: return ResourceClass::kMemory;
    case OperatorKind::kRowScale: return ResourceClass::kMemory;
    case OperatorKind::kAllReduce: return ResourceClass::kNetwork;
    case OperatorKind::kAllToAll: return ResourceClass::kNetwork;
    case OperatorKind::kAttention: return ResourceClass::kMemory;
    case OperatorKind::kCustom: return ResourceClass::kCompute;
  }
  return ResourceClass::kCompute;
}

namespace {

std::vector<int64_t> with_rows(const TensorMeta& m, int64_t rows) {
  std::vector<int64_t> s = m.shape;
  if (m.batch == BatchSemantics::kBatched && !s.empty()) s[0] = rows;
  return s;
}

void require(bool cond, Errc code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace

std::vector<std::pair<std::vector<int64_t>, BatchSemantics>> infer_op_outputs(
    OperatorKind kind, const std::vector<const TensorMeta*>& in, int64_t rows,
    const std::vector<const TensorMeta*>& out_decl) {
  using Out = std::pair<std::vector<int64_t>, BatchSemantics>;
  auto batched = [](const TensorMeta* m) { return m->batch == BatchSemantics::kBatched; };
  std::vector<Out> outs;
  switch (kind) {
    case OperatorKind::kMatMul: {
      require(in.size() == 2, Errc::ShapeMismatch, "MatMul takes 2 inputs");
      require(batched(in[0]) && in[0]->shape.size() == 2, Errc::ShapeMismatch,
              "MatMul lhs must be Batched rank-2");
      require(!batched(in[1]) && in[1]->shape.size() == 2, Errc::ShapeMismatch,
              "MatMul rhs must be Replicated rank-2");
      require(in[0]->shape[1] == in[1]->shape[0], Errc::ShapeMismatch,
              "MatMul inner extents disagree");
      outs.push_back({{rows, in[1]->shape[1]}, BatchSemantics::kBatched});
      break;
    }
    case OperatorKind::kElemAdd: {
      require(in.size() == 2, Errc::ShapeMismatch, "ElemAdd takes 2 inputs");
      require(in[0]->batch == in[1]->batch, Errc::ShapeMismatch,
              "ElemAdd inputs must share batch semantics");
      require(in[0]->shape == in[1]->shape, Errc::ShapeMismatch, "ElemAdd shapes disagree");
      outs.push_back({with_rows(*in[0], rows), in[0]->batch});
      break;
    }
    case OperatorKind::kRowScale:
    case OperatorKind::kAllReduce:
    case OperatorKind::kAllToAll:
    case OperatorKind::kAttention: {
      require(in.size() == 1, Errc::ShapeMismatch,
              std::string(kind_name(kind)) + " takes 1 input");
      require(batched(in[0]) && !in[0]->shape.empty(), Errc::ShapeMismatch,
              std::string(kind_name(kind)) + " input must be Batched rank>=1");
      outs.push_back({with_rows(*in[0], rows), BatchSemantics::kBatched});
      break;
    }
    case OperatorKind::kCustom: {
      // Custom ops trust their declared outputs; the runtime checks the
      // reference function's results against them.
      for (const TensorMeta* m : out_decl) outs.push_back({with_rows(*m, rows), m->batch});
      break;
    }
  }
  require(outs.size() == out_decl.size(), Errc::ShapeMismatch, "operator output count mismatch");
  return outs;
}

Graph build_graph(const GraphDescription& desc) {
  Graph g;
  g.tensors.reserve(desc.tensors.size());
  for (const TensorDecl& td : desc.tensors) {
    require(!td.name.empty(), Errc::ConfigError, "tensor with empty name");
    require(!g.tensor_index.count(td.name), Errc::DuplicateId,
            "duplicate tensor '" + td.name + "'");
    require(!td.shape.empty(), Errc::ShapeMismatch, "tensor '" + td.name + "' has empty shape");
    for (int64_t d : td.shape)
      require(d >= 0, Errc::ShapeMismatch, "tensor '" + td.name + "' has negative extent");
    if (td.batch == BatchSemantics::kBatched)
      require(td.shape.size() >= 1 && td.shape[0] >= 1, Errc::ShapeMismatch,
              "batched tensor '" + td.name + "' needs a positive batch extent");
    if (td.role == TensorRole::kWeight)
      require(td.batch == BatchSemantics::kReplicated, Errc::ShapeMismatch,
              "weight '" + td.name + "' must be replicated");
    TensorMeta m;
    m.name = td.name;
    m.shape = td.shape;
    m.batch = td.batch;
    m.dtype = td.dtype;
    m.role = td.role;
    g.tensor_index.emplace(m.name, static_cast<int32_t>(g.tensors.size()));
    g.tensors.push_back(std::move(m));
  }

  // Resolve operators against declared tensors; order is normalized below.
  struct Pending {
    OperatorNode node;
    int32_t decl_index;
  };
  std::vector<Pending> pending;
  std::unordered_map<std::string, int32_t> op_names;
  std::vector<int32_t> producer(g.tensors.size(), -1);
  for (const OpDecl& od : desc.operators) {
    require(!od.name.empty(), Errc::ConfigError, "operator with empty name");
    require(!op_names.count(od.name), Errc::DuplicateId, "duplicate operator '" + od.name + "'");
    op_names.emplace(od.name, static_cast<int32_t>(pending.size()));
    OperatorNode n;
    n.name = od.name;
    n.kind = od.kind;
    n.resource_class = od.resource_class.value_or(default_resource_class(od.kind));
    n.module_path = od.module_path;
    n.region_tags = od.region_tags;
    n.cost = od.cost.value_or(CostParams{});
    n.attrs = od.attrs;
    for (const std::string& in : od.inputs) n.inputs.push_back(g.tensor_id(in));
    for (const std::string& out : od.outputs) {
      int32_t t = g.tensor_id(out);
      require(producer[t] < 0, Errc::DuplicateId, "tensor '" + out + "' produced twice");
      const TensorRole role = g.tensors[t].role;
      require(role == TensorRole::kIntermediate || role == TensorRole::kGraphOutput,
              Errc::DuplicateId, "tensor '" + out + "' is externally bound but has a producer");
      producer[t] = static_cast<int32_t>(pending.size());
      n.outputs.push_back(t);
    }
    require(!n.outputs.empty(), Errc::ConfigError, "operator '" + od.name + "' has no outputs");
    pending.push_back({std::move(n), static_cast<int32_t>(pending.size())});
  }

  for (std::size_t t = 0; t < g.tensors.size(); ++t) {
    const TensorMeta& m = g.tensors[t];
    if ((m.role == TensorRole::kIntermediate || m.role == TensorRole::kGraphOutput) &&
        producer[t] < 0)
      fail(Errc::UnknownTensor, "tensor '" + m.name + "' has no producer");
  }

  // Kahn's algorithm; ties broken by declaration index for a stable order.
  const std::size_t n_ops = pending.size();
  std::vector<std::vector<int32_t>> succ(n_ops);
  std::vector<int32_t> indeg(n_ops, 0);
  for (std::size_t i = 0; i < n_ops; ++i) {
    std::set<int32_t> preds;
    for (int32_t t : pending[i].node.inputs) {
      if (producer[t] >= 0 && producer[t] != static_cast<int32_t>(i)) preds.insert(producer[t]);
    }
    for (int32_t p : preds) {
      succ[p].push_back(static_cast<int32_t>(i));
      ++indeg[i];
    }
  }
  std::set<int32_t> frontier;
  for (std::size_t i = 0; i < n_ops; ++i)
    if (indeg[i] == 0) frontier.insert(static_cast<int32_t>(i));
  std::vector<int32_t> order;
  order.reserve(n_ops);
  while (!frontier.empty()) {
    int32_t i = *frontier.begin();
    frontier.erase(frontier.begin());
    order.push_back(i);
    for (int32_t s : succ[i])
      if (--indeg[s] == 0) frontier.insert(s);
  }
  require(order.size() == n_ops, Errc::CycleDetected, "operator dependency cycle");

  std::vector<int32_t> new_index(n_ops);
  for (std::size_t pos = 0; pos < order.size(); ++pos) new_index[order[pos]] = static_cast<int32_t>(pos);
  g.ops.reserve(n_ops);
  for (int32_t old : order) g.ops.push_back(std::move(pending[old].node));
  for (std::size_t i = 0; i < n_ops; ++i) g.op_index.emplace(g.ops[i].name, static_cast<int32_t>(i));

  // Producer/consumer wiring in the final order.
  for (std::size_t t = 0; t < g.tensors.size(); ++t)
    g.tensors[t].producer = producer[t] >= 0 ? new_index[producer[t]] : -1;
  for (std::size_t i = 0; i < n_ops; ++i)
    for (int32_t t : g.ops[i].inputs) g.tensors[t].consumers.push_back(static_cast<int32_t>(i));

  // Shape validation in topological order, against declared output shapes.
  for (const OperatorNode& op : g.ops) {
    std::vector<const TensorMeta*> ins, outs;
    for (int32_t t : op.inputs) ins.push_back(&g.tensors[t]);
    for (int32_t t : op.outputs) outs.push_back(&g.tensors[t]);
    int64_t rows = 0;
    for (const TensorMeta* m : ins)
      if (m->batch == BatchSemantics::kBatched && !m->shape.empty()) {
        require(rows == 0 || rows == m->shape[0], Errc::ShapeMismatch,
                "operator '" + op.name + "' mixes batch extents");
        rows = m->shape[0];
      }
    if (rows == 0) rows = 1;
    auto inferred = infer_op_outputs(op.kind, ins, rows, outs);
    for (std::size_t j = 0; j < inferred.size(); ++j) {
      require(inferred[j].first == outs[j]->shape && inferred[j].second == outs[j]->batch,
              Errc::ShapeMismatch,
              "operator '" + op.name + "' output '" + outs[j]->name + "' shape mismatch");
    }
    if (op.kind == OperatorKind::kAllReduce)
      require(op.attrs.world_size >= 1, Errc::ConfigError,
              "AllReduce '" + op.name + "' needs world_size >= 1");
  }

  for (std::size_t t = 0; t < g.tensors.size(); ++t) {
    const TensorMeta& m = g.tensors[t];
    switch (m.role) {
      case TensorRole::kGraphInput: g.graph_inputs.push_back(static_cast<int32_t>(t)); break;
      case TensorRole::kWeight: g.weights.push_back(static_cast<int32_t>(t)); break;
      case TensorRole::kGraphOutput: g.graph_outputs.push_back(static_cast<int32_t>(t)); break;
      case TensorRole::kIntermediate:
        require(!m.consumers.empty(), Errc::ConfigError,
                "intermediate tensor '" + m.name + "' has no consumers");
        break;
    }
  }
  return g;
}

}  // namespace opflow
