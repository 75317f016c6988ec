#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "perdec/config.hpp"

namespace perdec::cli {

std::string sha256_hex(const std::string& bytes);

struct Check {
  std::string name;
  bool holds = false;
  bool exact = false;
  std::optional<Box> region;
  std::string detail;
};

Check from_verdict(std::string name, const Verdict& v);

// One per run. Written as manifest.json in the output directory.
class RunManifest {
 public:
  RunManifest(std::string command, std::vector<std::string> argv);

  // Reads the file and records its hash.
  std::string read_input(const std::string& path);
  void set_parameter(const std::string& key, nlohmann::json value) { parameters_[key] = std::move(value); }
  void add_check(Check c) { checks_.push_back(std::move(c)); }
  nlohmann::json& report() { return report_; }
  // Writes `text` under the output directory and records its name.
  void write_output(const std::filesystem::path& dir, const std::string& name, const std::string& text);

  void set_error(std::string message, int code);
  int exit_code() const;
  const std::vector<Check>& checks() const { return checks_; }
  nlohmann::json to_json() const;

 private:
  std::string command_;
  std::vector<std::string> argv_;
  nlohmann::json inputs_ = nlohmann::json::array();
  nlohmann::json parameters_ = nlohmann::json::object();
  std::vector<Check> checks_;
  nlohmann::json outputs_ = nlohmann::json::array();
  nlohmann::json report_ = nlohmann::json::object();
  std::optional<std::string> error_;
  int error_code_ = 0;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace perdec::cli
