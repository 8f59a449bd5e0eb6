// SPDX-FileCopyrightText: 2026 The OpFlow Authors
// SPDX-License-Identifier: Apache-2.0

#include "opflow/common.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <mutex>

namespace opflow {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::UnknownTensor: return "UnknownTensor";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::MissingBinding: return "MissingBinding";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::SplitReplicated: return "SplitReplicated";
    case Errc::OverlappingRules: return "OverlappingRules";
    case Errc::NonContiguousRegion: return "NonContiguousRegion";
    case Errc::PlanInvariant: return "PlanInvariant";
    case Errc::UnknownSubgraph: return "UnknownSubgraph";
    case Errc::UseAfterFree: return "UseAfterFree";
    case Errc::Unmaterialized: return "Unmaterialized";
    case Errc::DoubleProduce: return "DoubleProduce";
    case Errc::AlreadySplit: return "AlreadySplit";
    case Errc::InvalidUbatch: return "InvalidUbatch";
    case Errc::NotReady: return "NotReady";
    case Errc::DuplicateHandle: return "DuplicateHandle";
    case Errc::SignatureMismatch: return "SignatureMismatch";
    case Errc::MergeAcrossSplits: return "MergeAcrossSplits";
    case Errc::IncompleteSchedule: return "IncompleteSchedule";
    case Errc::SchedulerError: return "SchedulerError";
    case Errc::EngineStopped: return "EngineStopped";
    case Errc::MissingLabels: return "MissingLabels";
    case Errc::MissingPattern: return "MissingPattern";
    case Errc::ConfigError: return "ConfigError";
  }
  return "UnknownError";
}

LogLevel log_level() {
  static LogLevel level = [] {
    const char* env = std::getenv("OPF_LOG");
    if (!env) return LogLevel::kWarn;
    if (std::strcmp(env, "debug") == 0) return LogLevel::kDebug;
    if (std::strcmp(env, "info") == 0) return LogLevel::kInfo;
    if (std::strcmp(env, "error") == 0) return LogLevel::kError;
    return LogLevel::kWarn;
  }();
  return level;
}

void log(LogLevel level, const std::string& msg) {
  if (level < log_level()) return;
  static const char* tags[] = {"DEBUG", "INFO", "WARN", "ERROR"};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  std::fprintf(stderr, "[opflow:%s] %s\n", tags[static_cast<int>(level)], msg.c_str());
}

}  // namespace opflow
