#pragma once

#include <string>
#include <vector>

namespace camo::support {

// Contents of fixtures/example_dir, in listing order.
inline std::vector<std::string> example_dir_names() {
  return {"data1.xls",    "data2.xls",    "data3.xls",   "data4.xls",
          "data5.xls",    "regressions.r", "statistics.r", "evaluation.r",
          "testing.r",    "report.pdf",   "reportv1.pdf", "reportv2.pdf"};
}

}  // namespace camo::support
