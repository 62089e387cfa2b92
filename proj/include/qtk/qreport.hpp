#pragma once

#include <string>
#include <vector>

#include "qtk/qverify.hpp"

namespace qtk {

inline constexpr int report_schema_version = 1;
inline constexpr const char* tool_version = "1.0.0";

struct ReportDocument {
  int schema = report_schema_version;
  std::string tool = "qtool";
  std::string version = tool_version;
  EvalConfig config;
  GridSpec grid;
  std::vector<std::string> props;  // requested subset; empty = full run
  int jobs = 1;
  std::vector<PropertyReport> properties;
  std::vector<ControlReport> controls;
  double wall_time_s = 0.0;

  // wall_time_s is timing noise, not a result; equality ignores it.
  bool operator==(const ReportDocument& o) const;

  // 0 all green, 1 any genuine violation or a control that failed to fire.
  int exit_code() const;
};

std::string to_json(const ReportDocument& doc, int indent = 2);
ReportDocument report_from_json(const std::string& text);

std::string render_text(const ReportDocument& doc);

}  // namespace qtk
