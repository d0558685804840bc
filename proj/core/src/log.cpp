#include "camo/log.hpp"

#include <iostream>
#include <mutex>
#include <string>
#include <utility>

#include "camo/error.hpp"

namespace camo {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "InvalidInput";
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kConfig: return "ConfigError";
    case ErrorKind::kDuplicate: return "DuplicateError";
    case ErrorKind::kDegenerateVector: return "DegenerateVector";
    case ErrorKind::kDegenerateMean: return "DegenerateMean";
    case ErrorKind::kDegenerateDirectory: return "DegenerateDirectory";
    case ErrorKind::kDegenerateDistribution: return "DegenerateDistribution";
  }
  return "Unknown";
}

namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

WarningSink& sink_slot() {
  static WarningSink sink = [](std::string_view msg) {
    std::cerr << "warning: " << msg << '\n';
  };
  return sink;
}

}  // namespace

void set_warning_sink(WarningSink sink) {
  std::lock_guard lock(sink_mutex());
  sink_slot() = std::move(sink);
}

void warn(std::string_view message) {
  std::lock_guard lock(sink_mutex());
  if (sink_slot()) sink_slot()(message);
}

ScopedWarningSink::ScopedWarningSink(WarningSink sink) {
  std::lock_guard lock(sink_mutex());
  previous_ = std::exchange(sink_slot(), std::move(sink));
}

ScopedWarningSink::~ScopedWarningSink() {
  std::lock_guard lock(sink_mutex());
  sink_slot() = std::move(previous_);
}

}  // namespace camo
