#include "manifest.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "perdec/error.hpp"

namespace perdec::cli {

using nlohmann::json;

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256: digest failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

Check from_verdict(std::string name, const Verdict& v) { return {std::move(name), v.holds, v.exact, v.region, v.detail}; }

RunManifest::RunManifest(std::string command, std::vector<std::string> argv)
    : command_(std::move(command)), argv_(std::move(argv)), start_(std::chrono::steady_clock::now()) {}

std::string RunManifest::read_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(path + ": cannot open");
  std::ostringstream os;
  os << in.rdbuf();
  std::string text = os.str();
  inputs_.push_back({{"path", path}, {"sha256", sha256_hex(text)}});
  return text;
}

void RunManifest::write_output(const std::filesystem::path& dir, const std::string& name, const std::string& text) {
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path.string() + ": cannot write");
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
  outputs_.push_back(name);
}

void RunManifest::set_error(std::string message, int code) {
  error_ = std::move(message);
  error_code_ = code;
}

int RunManifest::exit_code() const {
  if (error_) return error_code_;
  for (const auto& c : checks_) {
    if (!c.holds) return 1;
  }
  return 0;
}

namespace {

json box_json(const Box& b) {
  json lo = json::array(), hi = json::array();
  for (std::size_t i = 0; i < b.dim(); ++i) {
    lo.push_back(b.lo[i]);
    hi.push_back(b.hi[i]);
  }
  return {{"lo", lo}, {"hi", hi}};
}

}  // namespace

json RunManifest::to_json() const {
  json checks = json::array();
  for (const auto& c : checks_) {
    json j = {{"name", c.name}, {"holds", c.holds}, {"evidence", c.exact ? "exact" : "window"}};
    if (c.region) j["region"] = box_json(*c.region);
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(std::move(j));
  }
  const int code = exit_code();
  const char* status = code == 0 ? "pass" : code == 2 ? "inconclusive" : error_ ? "error" : "fail";
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  json j = {{"command", command_},  {"argv", argv_},     {"inputs", inputs_},     {"parameters", parameters_},
            {"verdicts", checks},   {"outputs", outputs_}, {"report", report_},   {"status", status},
            {"exit_code", code},    {"wall_time_seconds", wall}};
  if (error_) j["error"] = *error_;
  return j;
}

}  // namespace perdec::cli
