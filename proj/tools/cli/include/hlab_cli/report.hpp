#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace hlab::cli {

enum class Format { Json, Csv, Text };

Format parse_format(const std::string& name);

struct Record {
  std::string check;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::string metric = "residual";  // residual | dim | slope | relative_error | value
  nlohmann::ordered_json value;
  nlohmann::ordered_json threshold;
  bool pass = false;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

class Report {
 public:
  Report(std::string command, std::string mode);

  void add(Record r) { records_.push_back(std::move(r)); }
  void append(std::vector<Record> rs);

  const std::vector<Record>& records() const { return records_; }
  std::size_t passed() const;
  bool all_passed() const { return !records_.empty() && passed() == records_.size(); }
  int exit_code() const { return all_passed() ? 0 : 1; }

  nlohmann::ordered_json to_json() const;
  void write(std::ostream& os, Format format) const;

 private:
  std::string command_;
  std::string mode_;
  std::vector<Record> records_;
};

nlohmann::ordered_json toolchain_metadata(const std::string& mode);

// Shortest round-trip text for a double.
std::string format_double(double x);

}  // namespace hlab::cli
