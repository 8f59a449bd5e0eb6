// SPDX-FileCopyrightText: 2026 The OpFlow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "opflow/graph.hpp"

namespace opflow {

// User-facing partition rules. Precedence when several match one operator:
// ByRegion > ByFunc > ByModule (innermost annotation wins).
struct PartitionRule {
  enum class Kind { kByModule, kByFunc, kByRegion };
  Kind kind = Kind::kByModule;
  // ByModule: glob over dotted module-path prefixes ("layer*.attn").
  // ByFunc:   glob over operator kind names ("AllReduce", "All*"); Custom ops
  //           also match their custom_name. Each matching call is isolated.
  // ByRegion: exact region tag; the tagged ops must be contiguous.
  std::string pattern;

  static PartitionRule by_module(std::string p) { return {Kind::kByModule, std::move(p)}; }
  static PartitionRule by_func(std::string p) { return {Kind::kByFunc, std::move(p)}; }
  static PartitionRule by_region(std::string p) { return {Kind::kByRegion, std::move(p)}; }
};

struct Subgraph {
  int32_t id = -1;
  std::vector<int32_t> ops;  // ascending, contiguous in graph topological order
  std::vector<int32_t> boundary_inputs;
  std::vector<int32_t> boundary_outputs;
  std::string label;
  ResourceClass dominant_class = ResourceClass::kCompute;

  int32_t first_op() const { return ops.front(); }
  int32_t last_op() const { return ops.back(); }
};

struct PartitionPlan {
  std::vector<Subgraph> subgraphs;  // ordered by first op index
  std::vector<std::pair<int32_t, int32_t>> sg_edges;
  std::vector<std::string> rule_trace;     // per subgraph: which rule cut it
  std::vector<int32_t> op_to_subgraph;     // per op index
  std::vector<std::vector<int32_t>> sg_succ;
  std::vector<std::vector<int32_t>> sg_pred;

  std::size_t size() const { return subgraphs.size(); }
  const Subgraph* find_label(const std::string& label) const {
    for (const Subgraph& sg : subgraphs)
      if (sg.label == label) return &sg;
    return nullptr;
  }
};

// Glob with '*' and '?' (no separator semantics).
bool glob_match(const std::string& pattern, const std::string& text);

// Applies rules to the graph. Throws OverlappingRules, NonContiguousRegion,
// ConfigError (empty pattern).
PartitionPlan partition(const Graph& g, const std::vector<PartitionRule>& rules);

// Re-checks every Subgraph/PartitionPlan invariant against the graph without
// assuming the plan came from partition(). Throws PlanInvariant naming the
// offending op/tensor on the first violation.
void validate_plan(const PartitionPlan& plan, const Graph& g);

// Recomputes boundary sets and edges for hand-assembled plans (test support).
void finalize_plan(PartitionPlan& plan, const Graph& g);

}  // namespace opflow
