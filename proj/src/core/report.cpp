#include "report.hpp"

#include "error.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

namespace hrck::report {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorKind::Io, "sha256 digest failed");
  std::string hex;
  hex.reserve(2 * length);
  static constexpr char kDigits[] = "0123456789abcdef";
  for (unsigned int i = 0; i < length; ++i) {
    hex.push_back(kDigits[digest[i] >> 4]);
    hex.push_back(kDigits[digest[i] & 15]);
  }
  return hex;
}

void ReportDocument::add_input(const std::string& path, std::string_view content) {
  inputs_.emplace_back(std::filesystem::path(path).filename().string(), sha256_hex(content));
}

void ReportDocument::begin(std::string section) { sections_.push_back({std::move(section), {}}); }

void ReportDocument::add(std::string key, std::string value) {
  if (sections_.empty()) begin("general");
  sections_.back().entries.emplace_back(std::move(key), std::move(value));
}

void ReportDocument::add_lines(std::string_view lines) {
  std::istringstream in{std::string(lines)};
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      add(line, "");
    else
      add(line.substr(0, eq), line.substr(eq + 1));
  }
}

void ReportDocument::add_timing(std::string stage, double milliseconds) {
  timings_.emplace_back(std::move(stage), milliseconds);
}

std::string ReportDocument::render_text(bool timings) const {
  std::ostringstream out;
  out << "format 1\n";
  out << "tool=hrck " << kToolVersion << "\n";
  out << "command=" << command_ << "\n";
  for (const auto& [name, digest] : inputs_) out << "input " << name << "=sha256:" << digest << "\n";
  for (const auto& s : sections_) {
    out << "[" << s.name << "]\n";
    for (const auto& [k, v] : s.entries) out << k << "=" << v << "\n";
  }
  if (timings && !timings_.empty()) {
    out << "[timings]\n";
    for (const auto& [stage, ms] : timings_) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", ms);
      out << "timing " << stage << "=" << buf << "ms\n";
    }
  }
  return out.str();
}

std::string ReportDocument::render_json(bool timings) const {
  nlohmann::ordered_json doc;
  doc["format"] = 1;
  doc["tool"] = std::string("hrck ") + kToolVersion;
  doc["command"] = command_;
  doc["inputs"] = nlohmann::ordered_json::array();
  for (const auto& [name, digest] : inputs_) doc["inputs"].push_back({{"name", name}, {"sha256", digest}});
  doc["sections"] = nlohmann::ordered_json::array();
  for (const auto& s : sections_) {
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& [k, v] : s.entries) entries.push_back({{"key", k}, {"value", v}});
    doc["sections"].push_back({{"name", s.name}, {"entries", std::move(entries)}});
  }
  if (timings) {
    doc["timings_ms"] = nlohmann::ordered_json::object();
    for (const auto& [stage, ms] : timings_) doc["timings_ms"][stage] = ms;
  }
  return doc.dump(2) + "\n";
}

}  // namespace hrck::report
