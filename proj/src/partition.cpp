// SPDX-FileCopyrightText: 2026 The OpFlow Authors
// SPDX-License-Identifier: Apache-2.0

#include "opflow/partition.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace opflow {

bool glob_match(const std::string& pattern, const std::string& text) {
  // Iterative glob with backtracking over the last '*'.
  std::size_t p = 0, t = 0, star = std::string::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

namespace {

// Shortest dotted prefix of module_path matching the glob, or empty.
std::string matching_module_prefix(const std::string& pattern, const std::string& module_path) {
  std::size_t pos = 0;
  while (pos <= module_path.size()) {
    std::size_t dot = module_path.find('.', pos);
    std::string prefix =
        dot == std::string::npos ? module_path : module_path.substr(0, dot);
    if (glob_match(pattern, prefix)) return prefix;
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  return {};
}

struct Claim {
  int level = 0;  // 0 none, 1 module, 2 func, 3 region
  std::string key;
  std::string trace;
};

ResourceClass dominant_class_of(const Graph& g, const std::vector<int32_t>& ops) {
  double weight[kNumResourceClasses] = {0, 0, 0};
  int64_t nominal_rows = 1;
  for (int32_t t : g.graph_inputs)
    if (g.tensors[t].batch == BatchSemantics::kBatched)
      nominal_rows = std::max(nominal_rows, g.tensors[t].shape[0]);
  for (int32_t i : ops) {
    const OperatorNode& op = g.ops[i];
    weight[static_cast<int>(op.resource_class)] +=
        op.cost.alpha + op.cost.beta * static_cast<double>(nominal_rows);
  }
  int best = 0;
  for (int c = 1; c < kNumResourceClasses; ++c)
    if (weight[c] > weight[best]) best = c;
  return static_cast<ResourceClass>(best);
}

}  // namespace

void finalize_plan(PartitionPlan& plan, const Graph& g) {
  const std::size_t n_sg = plan.subgraphs.size();
  plan.op_to_subgraph.assign(g.ops.size(), -1);
  for (std::size_t s = 0; s < n_sg; ++s) {
    for (int32_t op : plan.subgraphs[s].ops) {
      if (op >= 0 && op < static_cast<int32_t>(g.ops.size()))
        plan.op_to_subgraph[op] = static_cast<int32_t>(s);
    }
  }
  for (std::size_t s = 0; s < n_sg; ++s) {
    Subgraph& sg = plan.subgraphs[s];
    sg.id = static_cast<int32_t>(s);
    std::set<int32_t> produced, inputs, outputs;
    for (int32_t op : sg.ops)
      for (int32_t t : g.ops[op].outputs) produced.insert(t);
    for (int32_t op : sg.ops)
      for (int32_t t : g.ops[op].inputs)
        if (!produced.count(t)) inputs.insert(t);
    for (int32_t t : produced) {
      bool external = g.is_output(t);
      for (int32_t c : g.tensors[t].consumers)
        if (plan.op_to_subgraph[c] != static_cast<int32_t>(s)) external = true;
      if (external) outputs.insert(t);
    }
    sg.boundary_inputs.assign(inputs.begin(), inputs.end());
    sg.boundary_outputs.assign(outputs.begin(), outputs.end());
    sg.dominant_class = dominant_class_of(g, sg.ops);
  }
  std::set<std::pair<int32_t, int32_t>> edges;
  for (std::size_t t = 0; t < g.tensors.size(); ++t) {
    const TensorMeta& m = g.tensors[t];
    if (m.producer < 0) continue;
    int32_t from = plan.op_to_subgraph[m.producer];
    for (int32_t c : m.consumers) {
      int32_t to = plan.op_to_subgraph[c];
      if (from >= 0 && to >= 0 && from != to) edges.insert({from, to});
    }
  }
  plan.sg_edges.assign(edges.begin(), edges.end());
  plan.sg_succ.assign(n_sg, {});
  plan.sg_pred.assign(n_sg, {});
  for (auto [from, to] : plan.sg_edges) {
    plan.sg_succ[from].push_back(to);
    plan.sg_pred[to].push_back(from);
  }
}

PartitionPlan partition(const Graph& g, const std::vector<PartitionRule>& rules) {
  for (const PartitionRule& r : rules)
    if (r.pattern.empty()) fail(Errc::ConfigError, "partition rule with empty pattern");

  const std::size_t n_ops = g.ops.size();
  std::vector<Claim> claims(n_ops);

  auto claim = [&](std::size_t op, int level, const std::string& key, const std::string& trace) {
    Claim& c = claims[op];
    if (c.level == level && c.key != key)
      fail(Errc::OverlappingRules, "operator '" + g.ops[op].name + "' claimed by '" + c.key +
                                       "' and '" + key + "'");
    if (level > c.level) c = {level, key, trace};
  };

  // Region rules (highest precedence). Tagged ops must be one contiguous run.
  for (const PartitionRule& r : rules) {
    if (r.kind != PartitionRule::Kind::kByRegion) continue;
    std::vector<std::size_t> tagged;
    for (std::size_t i = 0; i < n_ops; ++i) {
      const auto& tags = g.ops[i].region_tags;
      if (std::find(tags.begin(), tags.end(), r.pattern) != tags.end()) tagged.push_back(i);
    }
    if (tagged.empty()) continue;
    for (std::size_t j = 1; j < tagged.size(); ++j)
      if (tagged[j] != tagged[j - 1] + 1)
        fail(Errc::NonContiguousRegion, "region tag '" + r.pattern +
                                            "' spans non-contiguous operators ('" +
                                            g.ops[tagged[j - 1]].name + "' .. '" +
                                            g.ops[tagged[j]].name + "')");
    for (std::size_t i : tagged)
      claim(i, 3, "region:" + r.pattern, "ByRegion(" + r.pattern + ")");
  }

  // Func rules: isolate each matching call (key embeds the op index).
  for (const PartitionRule& r : rules) {
    if (r.kind != PartitionRule::Kind::kByFunc) continue;
    for (std::size_t i = 0; i < n_ops; ++i) {
      const OperatorNode& op = g.ops[i];
      bool m = glob_match(r.pattern, kind_name(op.kind));
      if (!m && op.kind == OperatorKind::kCustom)
        m = glob_match(r.pattern, op.attrs.custom_name);
      if (m) claim(i, 2, op.name + "#" + std::to_string(i), "ByFunc(" + r.pattern + ")");
    }
  }

  // Module rules: ops grouped by the concrete matched prefix; the span runs
  // from the first to the last op with that prefix.
  struct Span {
    std::size_t first, last;
    std::string key, trace;
  };
  std::map<std::string, Span> spans;
  for (const PartitionRule& r : rules) {
    if (r.kind != PartitionRule::Kind::kByModule) continue;
    for (std::size_t i = 0; i < n_ops; ++i) {
      std::string key = matching_module_prefix(r.pattern, g.ops[i].module_path);
      if (key.empty()) continue;
      auto it = spans.find(key);
      if (it == spans.end())
        spans.emplace(key, Span{i, i, key, "ByModule(" + r.pattern + ")"});
      else {
        it->second.first = std::min(it->second.first, i);
        it->second.last = std::max(it->second.last, i);
      }
    }
  }
  for (const auto& [key, span] : spans) {
    for (std::size_t i = span.first; i <= span.last; ++i)
      claim(i, 1, "module:" + key, span.trace);
  }

  // Contiguous runs of identical claims become subgraphs; unclaimed ops
  // coalesce into maximal filler runs.
  PartitionPlan plan;
  std::size_t i = 0;
  while (i < n_ops) {
    std::size_t j = i + 1;
    while (j < n_ops && claims[j].level == claims[i].level && claims[j].key == claims[i].key)
      ++j;
    Subgraph sg;
    for (std::size_t k = i; k < j; ++k) sg.ops.push_back(static_cast<int32_t>(k));
    std::string trace;
    switch (claims[i].level) {
      case 0:
        sg.label = "filler#" + std::to_string(plan.subgraphs.size());
        trace = "filler";
        break;
      case 1:
        sg.label = claims[i].key.substr(std::string("module:").size());
        trace = claims[i].trace;
        break;
      case 2: {
        std::string key = claims[i].key;
        sg.label = key.substr(0, key.find('#'));
        trace = claims[i].trace;
        break;
      }
      case 3:
        sg.label = claims[i].key;
        trace = claims[i].trace;
        break;
    }
    plan.subgraphs.push_back(std::move(sg));
    plan.rule_trace.push_back(trace);
    i = j;
  }
  finalize_plan(plan, g);
  return plan;
}

namespace {

void check(bool cond, const std::string& msg) {
  if (!cond) fail(Errc::PlanInvariant, msg);
}

}  // namespace

void validate_plan(const PartitionPlan& plan, const Graph& g) {
  const std::size_t n_ops = g.ops.size();
  // Exact cover, each op exactly once.
  std::vector<int32_t> owner(n_ops, -1);
  for (std::size_t s = 0; s < plan.subgraphs.size(); ++s) {
    check(!plan.subgraphs[s].ops.empty(),
          "subgraph " + std::to_string(s) + " is empty");
    for (int32_t op : plan.subgraphs[s].ops) {
      check(op >= 0 && op < static_cast<int32_t>(n_ops),
            "subgraph " + std::to_string(s) + " references unknown op " + std::to_string(op));
      check(owner[op] < 0, "operator '" + g.ops[op].name + "' belongs to subgraphs " +
                               std::to_string(owner[op]) + " and " + std::to_string(s));
      owner[op] = static_cast<int32_t>(s);
    }
  }
  for (std::size_t op = 0; op < n_ops; ++op)
    check(owner[op] >= 0, "operator '" + g.ops[op].name + "' not covered by any subgraph");

  // Boundary sets.
  for (const Subgraph& sg : plan.subgraphs) {
    std::set<int32_t> inside(sg.ops.begin(), sg.ops.end());
    std::set<int32_t> want_in, want_out;
    for (int32_t op : sg.ops) {
      for (int32_t t : g.ops[op].inputs) {
        int32_t p = g.tensors[t].producer;
        if (p < 0 || !inside.count(p)) want_in.insert(t);
      }
      for (int32_t t : g.ops[op].outputs) {
        bool external = g.is_output(t);
        for (int32_t c : g.tensors[t].consumers)
          if (!inside.count(c)) external = true;
        if (external) want_out.insert(t);
      }
    }
    std::set<int32_t> got_in(sg.boundary_inputs.begin(), sg.boundary_inputs.end());
    std::set<int32_t> got_out(sg.boundary_outputs.begin(), sg.boundary_outputs.end());
    check(got_in == want_in,
          "subgraph '" + sg.label + "' boundary_inputs do not match tensor dependencies");
    check(got_out == want_out,
          "subgraph '" + sg.label + "' boundary_outputs do not match tensor dependencies");
  }

  // sg_edges must be the exact projection of tensor dependencies.
  std::set<std::pair<int32_t, int32_t>> want_edges;
  for (std::size_t t = 0; t < g.tensors.size(); ++t) {
    const TensorMeta& m = g.tensors[t];
    if (m.producer < 0) continue;
    for (int32_t c : m.consumers) {
      int32_t from = owner[m.producer], to = owner[c];
      if (from != to) want_edges.insert({from, to});
    }
  }
  std::set<std::pair<int32_t, int32_t>> got_edges(plan.sg_edges.begin(), plan.sg_edges.end());
  check(got_edges == want_edges, "sg_edges are not the projection of tensor dependencies");

  // Contraction must be acyclic.
  const std::size_t n_sg = plan.subgraphs.size();
  std::vector<int> indeg(n_sg, 0);
  std::vector<std::vector<int32_t>> succ(n_sg);
  for (auto [from, to] : want_edges) {
    succ[from].push_back(to);
    ++indeg[to];
  }
  std::vector<int32_t> queue;
  for (std::size_t s = 0; s < n_sg; ++s)
    if (indeg[s] == 0) queue.push_back(static_cast<int32_t>(s));
  std::size_t seen = 0;
  while (!queue.empty()) {
    int32_t s = queue.back();
    queue.pop_back();
    ++seen;
    for (int32_t nxt : succ[s])
      if (--indeg[nxt] == 0) queue.push_back(nxt);
  }
  check(seen == n_sg, "subgraph contraction contains a cycle");
}

}  // namespace opflow
