#include "fuknagaev/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "fuknagaev/error.hpp"

namespace fuknagaev::report {
namespace {

using nlohmann::json;

std::string format_with(const char* fmt, double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, fmt, value);
  return buf;
}

/// nlohmann orders object keys; only float formatting is customized.
void dump(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += json(key).dump();
        out += ':';
        dump(value, out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_machine(v) : "null";
      break;
    }
    default:
      out += j.dump();
  }
}

std::string serialize(const json& j) {
  std::string out;
  dump(j, out);
  out += '\n';
  return out;
}

std::string verdict(bool passed) { return passed ? "pass" : "fail"; }

json config_json(const std::map<std::string, ConfigValue>& config) {
  json j = json::object();
  for (const auto& [key, value] : config) {
    std::visit([&](const auto& v) { j[key] = v; }, value);
  }
  return j;
}

std::string kind_name(BoundKind kind) {
  return kind == BoundKind::confidence_threshold ? "confidence_threshold" : "tail_probability";
}

std::string relation_name(Relation r) {
  switch (r) {
    case Relation::less_equal:
      return "<=";
    case Relation::approx_equal:
      return "~=";
    case Relation::exact_equal:
      return "==";
  }
  return "?";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw Error(ErrorCode::invalid_argument, "format must be csv or json");
}

std::string format_machine(double value) { return format_with("%.17g", value); }

std::string format_human(double value) { return format_with("%.6g", value); }

std::string to_csv(const VerificationReport& report) {
  std::string out(kVerificationCsvHeader);
  out += '\n';
  for (const auto& r : report.rows) {
    out += format_machine(r.level) + ',' + format_machine(r.bound) + ',' + std::to_string(r.exceed) + ',' +
           std::to_string(r.trials) + ',' + format_machine(r.rate) + ',' + format_machine(r.cp_upper) + ',' +
           verdict(r.passed) + '\n';
  }
  return out;
}

std::string to_json(const VerificationReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"level", r.level},
                    {"bound", r.bound},
                    {"exceed", r.exceed},
                    {"trials", r.trials},
                    {"rate", r.rate},
                    {"cp_upper", r.cp_upper},
                    {"verdict", verdict(r.passed)}});
  }
  json j = {{"config", config_json(report.config)},
            {"rows", rows},
            {"meta", {{"campaign", report.campaign}, {"seed", report.seed}, {"passed", report.passed()}}}};
  return serialize(j);
}

std::string to_csv(const std::vector<TightnessRow>& rows) {
  std::string out = "level,bound,empirical_quantile,ratio,ratio_se,consistent\n";
  for (const auto& r : rows) {
    out += format_machine(r.level) + ',' + format_machine(r.bound) + ',' + format_machine(r.empirical_quantile) +
           ',' + (r.ratio ? format_machine(*r.ratio) : "NA") + ',' + format_machine(r.ratio_se) + ',' +
           (r.ratio ? (r.consistent ? "yes" : "no") : "NA") + '\n';
  }
  return out;
}

std::string to_json(const std::vector<TightnessRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"level", r.level},
                   {"bound", r.bound},
                   {"empirical_quantile", r.empirical_quantile},
                   {"ratio", r.ratio ? json(*r.ratio) : json(nullptr)},
                   {"ratio_se", r.ratio_se},
                   {"consistent", r.ratio ? json(r.consistent) : json(nullptr)}});
  }
  return serialize({{"rows", arr}});
}

std::string to_csv(const ProofChainReport& report) {
  std::string out = "step,claim,lhs,relation,rhs,verdict\n";
  for (const auto& s : report.steps) {
    out += std::to_string(s.step) + ',' + csv_field(s.claim) + ',' +
           (s.applicable ? format_machine(s.lhs) : "NA") + ',' + relation_name(s.relation) + ',' +
           (s.applicable ? format_machine(s.rhs) : "NA") + ',' + (s.applicable ? verdict(s.passed) : "skip") +
           '\n';
  }
  return out;
}

std::string to_json(const ProofChainReport& report) {
  json steps = json::array();
  for (const auto& s : report.steps) {
    json step = {{"step", s.step},
                 {"claim", s.claim},
                 {"relation", relation_name(s.relation)},
                 {"verdict", s.applicable ? verdict(s.passed) : "skip"}};
    if (s.applicable) {
      step["lhs"] = s.lhs;
      step["rhs"] = s.rhs;
    }
    steps.push_back(step);
  }
  json j = {{"q", report.q},
            {"D", report.D},
            {"sigma", report.sigma},
            {"u", report.u},
            {"x_hat", report.x_hat},
            {"trunc_L", report.trunc_L},
            {"alpha_qD", report.alpha_qD},
            {"final_coefficient", report.final_coefficient},
            {"numeric_quantile_bound", report.numeric_quantile_bound},
            {"displayed_bound", report.displayed_bound},
            {"failing_step", report.failing_step ? json(*report.failing_step) : json(nullptr)},
            {"steps", steps}};
  return serialize(j);
}

std::string to_csv(const BoundResult& result) {
  std::string out = "kind,q,D,sigma_sq,cq_to_q,level,n,value\n";
  out += kind_name(result.kind) + ',' + format_machine(result.inputs.q) + ',' + format_machine(result.inputs.D) +
         ',' + format_machine(result.inputs.sigma_sq) + ',' + format_machine(result.inputs.cq_to_q) + ',' +
         format_machine(result.inputs.level) + ',' + (result.inputs.n ? std::to_string(*result.inputs.n) : "NA") +
         ',' + format_machine(result.value) + '\n';
  return out;
}

std::string to_json(const BoundResult& result) {
  json inputs = {{"q", result.inputs.q},
                 {"D", result.inputs.D},
                 {"sigma_sq", result.inputs.sigma_sq},
                 {"cq_to_q", result.inputs.cq_to_q},
                 {"level", result.inputs.level}};
  if (result.inputs.n) inputs["n"] = *result.inputs.n;
  return serialize({{"kind", kind_name(result.kind)}, {"inputs", inputs}, {"value", result.value}});
}

std::string to_csv(const std::vector<QuantileRow>& rows) {
  std::string out = "level,q,q1,qinf\n";
  for (const auto& r : rows) {
    out += format_machine(r.level) + ',' + format_machine(r.triple.q) + ',' + format_machine(r.triple.q1) + ',' +
           format_machine(r.triple.qinf) + '\n';
  }
  return out;
}

std::string to_json(const std::vector<QuantileRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"level", r.level}, {"q", r.triple.q}, {"q1", r.triple.q1}, {"qinf", r.triple.qinf}});
  }
  return serialize({{"rows", arr}});
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io_error, "cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::io_error, "failed writing " + path.string());
}

namespace {

bool has_type(const json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  if (type == "integer") return value.is_number_integer();
  if (type == "number") return value.is_number();
  return false;
}

void check(const json& value, const json& schema, const std::string& where, std::vector<std::string>& errors) {
  if (schema.contains("type")) {
    const json& t = schema["type"];
    bool ok = false;
    if (t.is_array()) {
      for (const auto& alt : t) ok = ok || has_type(value, alt.get<std::string>());
    } else {
      ok = has_type(value, t.get<std::string>());
    }
    if (!ok) {
      errors.push_back(where + ": expected type " + t.dump());
      return;
    }
  }
  if (schema.contains("enum")) {
    const auto& options = schema["enum"];
    if (std::find(options.begin(), options.end(), value) == options.end()) {
      errors.push_back(where + ": value not in enum");
    }
  }
  if (value.is_number()) {
    const double v = value.get<double>();
    if (schema.contains("minimum") && v < schema["minimum"].get<double>()) errors.push_back(where + ": below minimum");
    if (schema.contains("maximum") && v > schema["maximum"].get<double>()) errors.push_back(where + ": above maximum");
  }
  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema["required"]) {
        if (!value.contains(key.get<std::string>())) {
          errors.push_back(where + ": missing " + key.get<std::string>());
        }
      }
    }
    const json properties = schema.value("properties", json::object());
    const bool closed = schema.contains("additionalProperties") && schema["additionalProperties"].is_boolean() &&
                        !schema["additionalProperties"].get<bool>();
    for (const auto& [key, child] : value.items()) {
      if (properties.contains(key)) {
        check(child, properties[key], where + "." + key, errors);
      } else if (closed) {
        errors.push_back(where + ": unexpected property " + key);
      }
    }
  }
  if (value.is_array() && schema.contains("items")) {
    for (std::size_t i = 0; i < value.size(); ++i) {
      check(value[i], schema["items"], where + "[" + std::to_string(i) + "]", errors);
    }
  }
}

}  // namespace

SchemaResult validate_schema(std::string_view document, std::string_view schema) {
  SchemaResult result;
  json doc, sch;
  try {
    doc = json::parse(document);
    sch = json::parse(schema);
  } catch (const json::parse_error& e) {
    result.valid = false;
    result.errors.emplace_back(std::string("parse error: ") + e.what());
    return result;
  }
  check(doc, sch, "$", result.errors);
  result.valid = result.errors.empty();
  return result;
}

}  // namespace fuknagaev::report
