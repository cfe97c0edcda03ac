#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hrck::report {

inline constexpr const char* kToolVersion = "1.0.0";

std::string sha256_hex(std::string_view data);

// Ordered sections of key=value lines. Text and JSON renderings carry the
// same entries; timings are emitted only on request so default reports are
// byte-identical across runs.
class ReportDocument {
public:
  explicit ReportDocument(std::string command) : command_(std::move(command)) {}

  // Inputs are identified by file name (not path) plus a content digest.
  void add_input(const std::string& path, std::string_view content);
  void begin(std::string section);
  void add(std::string key, std::string value);
  // Appends pre-rendered `key=value` lines (split on the first '=').
  void add_lines(std::string_view lines);
  void add_timing(std::string stage, double milliseconds);

  std::string render_text(bool timings) const;
  std::string render_json(bool timings) const;

  const std::string& command() const noexcept { return command_; }

private:
  struct Section {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;
  };

  std::string command_;
  std::vector<std::pair<std::string, std::string>> inputs_;  // name, digest
  std::vector<Section> sections_;
  std::vector<std::pair<std::string, double>> timings_;
};

}  // namespace hrck::report
