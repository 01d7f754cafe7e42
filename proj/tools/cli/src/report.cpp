#include "hlab_cli/report.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>

#ifndef HLAB_VERSION
#define HLAB_VERSION "0.0.0"
#endif

namespace hlab::cli {

namespace {

std::string scalar_text(const nlohmann::ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string params_text(const nlohmann::ordered_json& params) {
  std::string out;
  for (auto it = params.begin(); it != params.end(); ++it) {
    if (!out.empty()) out += ' ';
    out += it.key() + '=' + scalar_text(it.value());
  }
  return out;
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "text") return Format::Text;
  throw std::invalid_argument("unknown format: " + name);
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Report::Report(std::string command, std::string mode) : command_(std::move(command)), mode_(std::move(mode)) {}

void Report::append(std::vector<Record> rs) {
  for (auto& r : rs) records_.push_back(std::move(r));
}

std::size_t Report::passed() const {
  std::size_t k = 0;
  for (const auto& r : records_) k += r.pass ? 1 : 0;
  return k;
}

nlohmann::ordered_json toolchain_metadata(const std::string& mode) {
  nlohmann::ordered_json t;
  t["name"] = "holonomy-lab";
  t["version"] = HLAB_VERSION;
  t["mode"] = mode;
#if defined(__clang__)
  t["compiler"] = "clang " __clang_version__;
#elif defined(__GNUC__)
  t["compiler"] = "gcc " __VERSION__;
#else
  t["compiler"] = "unknown";
#endif
  return t;
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json out;
  out["schema"] = 1;
  out["command"] = command_;
  out["toolchain"] = toolchain_metadata(mode_);
  auto& recs = out["records"] = nlohmann::ordered_json::array();
  for (const auto& r : records_) {
    nlohmann::ordered_json j;
    j["check"] = r.check;
    j["params"] = r.params;
    j[r.metric] = r.value;
    j["threshold"] = r.threshold;
    j["pass"] = r.pass;
    for (auto it = r.details.begin(); it != r.details.end(); ++it) j[it.key()] = it.value();
    recs.push_back(std::move(j));
  }
  out["summary"] = {{"total", records_.size()}, {"passed", passed()}};
  return out;
}

void Report::write(std::ostream& os, Format format) const {
  switch (format) {
    case Format::Json:
      os << to_json().dump(2) << '\n';
      break;
    case Format::Csv:
      os << "check,params,metric,value,threshold,pass\n";
      for (const auto& r : records_) {
        os << r.check << ',' << csv_quote(r.params.dump()) << ',' << r.metric << ',' << scalar_text(r.value) << ','
           << scalar_text(r.threshold) << ',' << (r.pass ? "true" : "false") << '\n';
      }
      break;
    case Format::Text:
      for (const auto& r : records_) {
        os << (r.pass ? "PASS " : "FAIL ") << r.check << "  " << params_text(r.params) << "  " << r.metric << '='
           << scalar_text(r.value);
        if (!r.threshold.is_null()) os << "  threshold=" << scalar_text(r.threshold);
        os << '\n';
        if (!r.pass && r.details.contains("diagnostic")) os << "    " << scalar_text(r.details["diagnostic"]) << '\n';
      }
      os << command_ << ": " << passed() << '/' << records_.size() << " passed\n";
      break;
  }
}

}  // namespace hlab::cli
