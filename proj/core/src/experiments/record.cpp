#include "fairmon/experiments/record.hpp"

#include <cmath>

#include "json.hpp"

#include "fairmon/util/format.hpp"

namespace fairmon::experiments {

OutputRecord make_record(const monitor::MonitorOutput& out,
                         const std::string& root, double tau_mix,
                         std::uint64_t run_id) {
  OutputRecord record;
  record.t = out.t;
  record.root = root;
  record.tau_mix = tau_mix;
  record.run_id = run_id;
  if (out.inconclusive) {
    record.verdict = "bot";
    return record;
  }
  if (out.has_value) {
    record.point = out.point;
    record.lo = out.interval.lo;
    record.hi = out.interval.hi;
  }
  record.epsilon = out.epsilon;
  if (out.verdict) record.verdict = monitor::verdict_name(*out.verdict);
  return record;
}

std::string csv_header() {
  return "t,root,point,lo,hi,epsilon,verdict,tau_mix,run_id";
}

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string opt_number(const std::optional<double>& v) {
  return v ? util::format_double(*v) : std::string();
}

}  // namespace

std::string csv_row(const OutputRecord& record) {
  std::string out;
  out += std::to_string(record.t);
  out += ',';
  out += csv_escape(record.root);
  out += ',';
  out += opt_number(record.point);
  out += ',';
  out += opt_number(record.lo);
  out += ',';
  out += opt_number(record.hi);
  out += ',';
  out += opt_number(record.epsilon);
  out += ',';
  out += record.verdict ? csv_escape(*record.verdict) : std::string();
  out += ',';
  out += util::format_double(record.tau_mix);
  out += ',';
  out += std::to_string(record.run_id);
  return out;
}

namespace {

nlohmann::json number_field(const std::optional<double>& v) {
  if (!v) return nullptr;
  if (std::isinf(*v) || std::isnan(*v)) return util::format_double(*v);
  return *v;
}

}  // namespace

std::string jsonl_row(const OutputRecord& record) {
  nlohmann::ordered_json row;
  row["t"] = record.t;
  row["root"] = record.root;
  row["point"] = number_field(record.point);
  row["lo"] = number_field(record.lo);
  row["hi"] = number_field(record.hi);
  row["epsilon"] = number_field(record.epsilon);
  row["verdict"] = record.verdict ? nlohmann::ordered_json(*record.verdict)
                                  : nlohmann::ordered_json(nullptr);
  row["tau_mix"] = record.tau_mix;
  row["run_id"] = record.run_id;
  return row.dump();
}

}  // namespace fairmon::experiments
