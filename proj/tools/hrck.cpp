#include "hrck/hrck.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace {

struct SessionDeleter {
  void operator()(hrck_session* s) const { hrck_session_destroy(s); }
};
struct ReportDeleter {
  void operator()(hrck_report* r) const { hrck_report_destroy(r); }
};

using Session = std::unique_ptr<hrck_session, SessionDeleter>;
using Report = std::unique_ptr<hrck_report, ReportDeleter>;

int fail(hrck_status status) {
  std::cerr << "error: " << hrck_last_error() << "\n";
  return hrck_status_exit_code(status);
}

const char* c_or_null(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

// Prints the report and mirrors it to `report_path` when given.
int finish(hrck_status status, hrck_report* raw, const std::string& report_path) {
  Report report(raw);
  if (!report) return fail(status);
  const std::string text = hrck_report_text(report.get());
  std::cout << text;
  if (!report_path.empty()) {
    std::ofstream out(report_path, std::ios::binary);
    out << text;
    if (!out) {
      std::cerr << "error: cannot write " << report_path << "\n";
      return 2;
    }
  }
  if (status != HRCK_OK) std::cerr << "error: " << hrck_last_error() << "\n";
  return hrck_status_exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triangle presentations, higher-rank Cuntz-Krieger systems and their K-theory"};
  app.set_version_flag("--version", std::string(hrck_version()));
  app.require_subcommand(1);

  std::string format = "text";
  unsigned threads = 1;
  bool timings = false;
  int periodicity_bound = 2;
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--threads", threads, "Upper bound on worker threads")->check(CLI::Range(1u, 1024u));
  app.add_flag("--timings", timings, "Append per-stage timings to the report");
  app.add_option("--periodicity-bound", periodicity_bound, "Largest |p_i| searched for H3 witnesses")
      ->check(CLI::Range(1, 16));

  std::string presentation, graph, matrices, matrix_out, report_path, lambda_path, out_dir;
  std::vector<std::string> tensor;
  bool override_conditions = false;
  int q = 2;
  std::size_t limit = 10;

  auto* validate = app.add_subcommand("validate", "Check a presentation or graph file");
  auto* vp = validate->add_option("--presentation", presentation, "Presentation file")->check(CLI::ExistingFile);
  auto* vg = validate->add_option("--graph", graph, "Graph file")->check(CLI::ExistingFile);
  vp->excludes(vg);
  validate->add_option("--report", report_path, "Also write the report here");
  validate->require_option(1, 2);

  auto* kt = app.add_subcommand("ktheory", "Build the transition system and compute K0, K1 and [1]");
  auto* kp = kt->add_option("--presentation", presentation, "Presentation file")->check(CLI::ExistingFile);
  auto* kg = kt->add_option("--graph", graph, "Graph file")->check(CLI::ExistingFile);
  auto* ktn = kt->add_option("--tensor", tensor, "Two graph or single-matrix files")
                  ->expected(2)
                  ->check(CLI::ExistingFile);
  auto* km = kt->add_option("--matrices", matrices, "Matrix triplet file (one or two blocks)")
                 ->check(CLI::ExistingFile);
  kp->excludes(kg, ktn, km);
  kg->excludes(ktn, km);
  ktn->excludes(km);
  kt->add_option("--matrix-out", matrix_out, "Directory for matrices.txt and tiles.txt");
  kt->add_option("--report", report_path, "Also write the report here");
  kt->add_flag("--override-conditions", override_conditions, "Compute rank-2 K-theory even if H-checks fail");

  auto* search = app.add_subcommand("search", "Enumerate triangle presentations for a point-line correspondence");
  search->add_option("--plane", q, "Plane order q (at most 3)")->required();
  search->add_option("--lambda", lambda_path, "Correspondence file")->check(CLI::ExistingFile);
  search->add_option("--limit", limit, "Stop after this many presentations");
  search->add_option("--out", out_dir, "Directory for the found presentation files");
  search->add_option("--report", report_path, "Also write the report here");

  auto* lambda = app.add_subcommand("lambda", "Write the derived plane and correspondence of a presentation");
  lambda->add_option("--presentation", presentation, "Presentation file")->required()->check(CLI::ExistingFile);
  lambda->add_option("--out", out_dir, "Output file (stdout when absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (kt->parsed() && presentation.empty() && graph.empty() && tensor.empty() && matrices.empty()) {
    std::cerr << "error: ktheory needs --presentation, --graph, --tensor or --matrices\n";
    return 2;
  }

  if (lambda->parsed()) {
    char* text = nullptr;
    const hrck_status status = hrck_lambda_file(presentation.c_str(), &text);
    if (status != HRCK_OK) return fail(status);
    std::unique_ptr<char, void (*)(char*)> owned(text, hrck_string_free);
    if (out_dir.empty()) {
      std::cout << owned.get();
    } else {
      std::ofstream out(out_dir, std::ios::binary);
      out << owned.get();
      if (!out) {
        std::cerr << "error: cannot write " << out_dir << "\n";
        return 2;
      }
    }
    return 0;
  }

  hrck_session* raw_session = nullptr;
  if (const hrck_status s = hrck_session_create(&raw_session); s != HRCK_OK) return fail(s);
  Session session(raw_session);
  hrck_session_set_threads(session.get(), threads);
  hrck_session_set_format(session.get(), format == "json" ? HRCK_FORMAT_JSON : HRCK_FORMAT_TEXT);
  hrck_session_set_timings(session.get(), timings ? 1 : 0);
  hrck_session_set_periodicity_bound(session.get(), periodicity_bound);
  hrck_session_set_override_conditions(session.get(), override_conditions ? 1 : 0);

  hrck_report* report = nullptr;
  hrck_status status = HRCK_OK;
  if (validate->parsed()) {
    status = presentation.empty() ? hrck_validate_graph(session.get(), graph.c_str(), &report)
                                  : hrck_validate_presentation(session.get(), presentation.c_str(), &report);
  } else if (kt->parsed()) {
    if (!presentation.empty())
      status = hrck_ktheory_presentation(session.get(), presentation.c_str(), c_or_null(matrix_out), &report);
    else if (!graph.empty())
      status = hrck_ktheory_graph(session.get(), graph.c_str(), c_or_null(matrix_out), &report);
    else if (!tensor.empty())
      status = hrck_ktheory_tensor(session.get(), tensor[0].c_str(), tensor[1].c_str(), c_or_null(matrix_out),
                                   &report);
    else
      status = hrck_ktheory_matrices(session.get(), matrices.c_str(), &report);
  } else if (search->parsed()) {
    status = hrck_search(session.get(), q, c_or_null(lambda_path), limit, c_or_null(out_dir), &report);
  }
  return finish(status, report, report_path);
}
