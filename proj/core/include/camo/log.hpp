#pragma once

#include <functional>
#include <string_view>

namespace camo {

// Warnings (kappa clamps, collapsed fits, all-zero normalization batches)
// go through a process-wide sink. The default writes to stderr; tests and
// the CLI may replace or silence it.
using WarningSink = std::function<void(std::string_view)>;

void set_warning_sink(WarningSink sink);
void warn(std::string_view message);

/// Restores the previous sink on destruction.
class ScopedWarningSink {
 public:
  explicit ScopedWarningSink(WarningSink sink);
  ~ScopedWarningSink();
  ScopedWarningSink(const ScopedWarningSink&) = delete;
  ScopedWarningSink& operator=(const ScopedWarningSink&) = delete;

 private:
  WarningSink previous_;
};

}  // namespace camo
