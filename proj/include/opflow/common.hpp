// SPDX-FileCopyrightText: 2026 The OpFlow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace opflow {

enum class Errc {
  // graph_model
  CycleDetected,
  UnknownTensor,
  ShapeMismatch,
  DuplicateId,
  MissingBinding,
  SizeMismatch,
  SplitReplicated,
  // partitioner
  OverlappingRules,
  NonContiguousRegion,
  PlanInvariant,
  // dataflow
  UnknownSubgraph,
  UseAfterFree,
  Unmaterialized,
  DoubleProduce,
  // sched_api
  AlreadySplit,
  InvalidUbatch,
  NotReady,
  DuplicateHandle,
  SignatureMismatch,
  MergeAcrossSplits,
  IncompleteSchedule,
  SchedulerError,
  // engine
  EngineStopped,
  // strategies
  MissingLabels,
  MissingPattern,
  // cli
  ConfigError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

// Log levels selected via the OPF_LOG env var (debug|info|warn|error). Default: warn.
enum class LogLevel { kDebug = 0, kInfo = 1, kWarn = 2, kError = 3 };

LogLevel log_level();
void log(LogLevel level, const std::string& msg);

inline void log_debug(const std::string& msg) { log(LogLevel::kDebug, msg); }
inline void log_info(const std::string& msg) { log(LogLevel::kInfo, msg); }
inline void log_warn(const std::string& msg) { log(LogLevel::kWarn, msg); }

}  // namespace opflow
