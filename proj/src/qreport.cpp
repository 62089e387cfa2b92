#include "qtk/qreport.hpp"

#include <cstdio>
#include <string>

#include <json.hpp>

namespace qtk {

namespace {

using nlohmann::json;

json prop_to_json(const PropertyReport& p) {
  json j;
  j["id"] = p.id;
  j["title"] = p.title;
  j["verdict"] = verdict_name(p.verdict);
  j["evaluations"] = p.evaluations;
  j["excluded"] = p.excluded;
  j["notes"] = p.notes;
  if (p.verdict != Verdict::Vacuous) {
    j["worst_margin"] = p.worst_margin;
    j["witness_q"] = p.witness_q;
    j["witness_x"] = p.witness_x;
    j["detail"] = p.detail;
  }
  return j;
}

PropertyReport prop_from_json(const json& j) {
  PropertyReport p;
  p.id = j.value("id", "");
  p.title = j.value("title", "");
  const std::string v = j.value("verdict", "vacuous");
  p.verdict = v == "pass" ? Verdict::Pass
                          : v == "fail" ? Verdict::Fail : Verdict::Vacuous;
  p.evaluations = j.value("evaluations", 0LL);
  p.excluded = j.value("excluded", 0LL);
  p.notes = j.value("notes", std::vector<std::string>{});
  p.worst_margin = j.value("worst_margin", 0.0);
  p.witness_q = j.value("witness_q", 0.0);
  p.witness_x = j.value("witness_x", 0.0);
  p.detail = j.value("detail", "");
  return p;
}

json control_to_json(const ControlReport& c) {
  json j;
  j["id"] = c.id;
  j["title"] = c.title;
  j["fired"] = c.fired;
  j["worst_margin"] = c.worst_margin;
  j["witness_q"] = c.witness_q;
  j["witness_x"] = c.witness_x;
  j["evaluations"] = c.evaluations;
  return j;
}

ControlReport control_from_json(const json& j) {
  ControlReport c;
  c.id = j.value("id", "");
  c.title = j.value("title", "");
  c.fired = j.value("fired", false);
  c.worst_margin = j.value("worst_margin", 0.0);
  c.witness_q = j.value("witness_q", 0.0);
  c.witness_x = j.value("witness_x", 0.0);
  c.evaluations = j.value("evaluations", 0LL);
  return c;
}

}  // namespace

bool ReportDocument::operator==(const ReportDocument& o) const {
  return schema == o.schema && tool == o.tool && version == o.version &&
         config == o.config && grid == o.grid && props == o.props &&
         jobs == o.jobs && properties == o.properties && controls == o.controls;
}

int ReportDocument::exit_code() const {
  for (const auto& p : properties)
    if (p.verdict == Verdict::Fail) return 1;
  for (const auto& c : controls)
    if (!c.fired) return 1;
  return 0;
}

std::string to_json(const ReportDocument& doc, int indent) {
  json j;
  j["schema"] = doc.schema;
  j["tool"] = doc.tool;
  j["version"] = doc.version;
  j["config"] = {{"tol_abs", doc.config.tol_abs},
                 {"max_terms", doc.config.max_terms},
                 {"near_one_delta", doc.config.near_one_delta}};
  j["grid"] = {{"q_set", doc.grid.q_set},
               {"x_min", doc.grid.x_min},
               {"x_max", doc.grid.x_max},
               {"x_count", doc.grid.x_count},
               {"exclusion_radius", doc.grid.exclusion_radius}};
  j["props"] = doc.props;
  j["jobs"] = doc.jobs;
  int pass = 0, fail = 0, vac = 0;
  for (const auto& p : doc.properties) {
    if (p.verdict == Verdict::Pass) ++pass;
    if (p.verdict == Verdict::Fail) ++fail;
    if (p.verdict == Verdict::Vacuous) ++vac;
  }
  int fired = 0;
  for (const auto& c : doc.controls) fired += c.fired ? 1 : 0;
  j["summary"] = {{"pass", pass},
                  {"fail", fail},
                  {"vacuous", vac},
                  {"controls_fired", fired},
                  {"controls_total", static_cast<int>(doc.controls.size())}};
  j["properties"] = json::array();
  for (const auto& p : doc.properties) j["properties"].push_back(prop_to_json(p));
  j["controls"] = json::array();
  for (const auto& c : doc.controls) j["controls"].push_back(control_to_json(c));
  j["wall_time_s"] = doc.wall_time_s;
  return j.dump(indent);
}

ReportDocument report_from_json(const std::string& text) {
  const json j = json::parse(text);
  ReportDocument doc;
  doc.schema = j.value("schema", report_schema_version);
  doc.tool = j.value("tool", "qtool");
  doc.version = j.value("version", tool_version);
  if (j.contains("config")) {
    const json& c = j["config"];
    doc.config.tol_abs = c.value("tol_abs", doc.config.tol_abs);
    doc.config.max_terms = c.value("max_terms", doc.config.max_terms);
    doc.config.near_one_delta =
        c.value("near_one_delta", doc.config.near_one_delta);
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    doc.grid.q_set = g.value("q_set", std::vector<double>{});
    doc.grid.x_min = g.value("x_min", doc.grid.x_min);
    doc.grid.x_max = g.value("x_max", doc.grid.x_max);
    doc.grid.x_count = g.value("x_count", doc.grid.x_count);
    doc.grid.exclusion_radius =
        g.value("exclusion_radius", doc.grid.exclusion_radius);
  }
  doc.props = j.value("props", std::vector<std::string>{});
  doc.jobs = j.value("jobs", 1);
  if (j.contains("properties"))
    for (const json& p : j["properties"]) doc.properties.push_back(prop_from_json(p));
  if (j.contains("controls"))
    for (const json& c : j["controls"]) doc.controls.push_back(control_from_json(c));
  doc.wall_time_s = j.value("wall_time_s", 0.0);
  return doc;
}

std::string render_text(const ReportDocument& doc) {
  std::string out;
  char buf[512];
  for (const auto& p : doc.properties) {
    if (p.verdict == Verdict::Vacuous) {
      std::snprintf(buf, sizeof(buf), "%-4s  vacuous  (no applicable grid points)\n",
                    p.id.c_str());
      out += buf;
    } else {
      std::snprintf(buf, sizeof(buf),
                    "%-4s  %-7s  worst=%.6e  at q=%g x=%g  (%s)\n", p.id.c_str(),
                    p.verdict == Verdict::Fail ? "FAIL" : verdict_name(p.verdict),
                    p.worst_margin, p.witness_q, p.witness_x, p.detail.c_str());
      out += buf;
    }
    for (const auto& n : p.notes) {
      std::snprintf(buf, sizeof(buf), "      note: %s\n", n.c_str());
      out += buf;
    }
  }
  if (!doc.controls.empty()) {
    out += "controls:\n";
    for (const auto& c : doc.controls) {
      std::snprintf(buf, sizeof(buf),
                    "  %-18s  %-9s  worst=%.6e  at q=%g x=%g\n", c.id.c_str(),
                    c.fired ? "fired" : "NOT FIRED", c.worst_margin, c.witness_q,
                    c.witness_x);
      out += buf;
    }
  }
  int pass = 0, fail = 0, vac = 0;
  for (const auto& p : doc.properties) {
    if (p.verdict == Verdict::Pass) ++pass;
    if (p.verdict == Verdict::Fail) ++fail;
    if (p.verdict == Verdict::Vacuous) ++vac;
  }
  int fired = 0;
  for (const auto& c : doc.controls) fired += c.fired ? 1 : 0;
  std::snprintf(buf, sizeof(buf),
                "summary: pass=%d fail=%d vacuous=%d controls=%d/%d fired  "
                "wall=%.3fs\n",
                pass, fail, vac, fired, static_cast<int>(doc.controls.size()),
                doc.wall_time_s);
  out += buf;
  return out;
}

}  // namespace qtk
