#pragma once

#include "report.hpp"

#include <cstddef>
#include <optional>
#include <string>

namespace hrck::pipeline {

struct RunOptions {
  unsigned threads = 1;
  int periodicity_bound = 2;
  bool override_conditions = false;
  double dense_threshold = 0.25;
};

// Exit codes shared by every command.
enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kConsistency = 3 };

struct Run {
  report::ReportDocument report;
  int exit_code = kOk;
  std::string failure;  // set with kFailure
};

// Errors that stop a command before a report exists (parse, I/O, scope
// guards, consistency) propagate as hrck::Error.
Run validate_presentation(const std::string& path, const RunOptions& options);
Run validate_graph(const std::string& path, const RunOptions& options);

// `matrix_out`, when set, receives matrices.txt (and tiles.txt for
// presentations).
Run ktheory_presentation(const std::string& path, const std::optional<std::string>& matrix_out,
                         const RunOptions& options);
Run ktheory_graph(const std::string& path, const std::optional<std::string>& matrix_out, const RunOptions& options);
// Each input is a graph file or a single-matrix triplet file.
Run ktheory_tensor(const std::string& first, const std::string& second, const std::optional<std::string>& matrix_out,
                   const RunOptions& options);
Run ktheory_matrices(const std::string& path, const RunOptions& options);

struct SearchRequest {
  int q = 2;
  std::optional<std::string> lambda_path;  // PG(2,q) with the polarity when absent
  std::size_t limit = 10;
  std::optional<std::string> out_dir;
  std::uint64_t max_nodes = 50'000'000;
};

inline constexpr int kMaxSearchOrder = 3;

Run search(const SearchRequest& request, const RunOptions& options);

// Correspondence file (derived plane plus lambda) for a presentation file.
std::string lambda_file(const std::string& presentation_path);

}  // namespace hrck::pipeline
