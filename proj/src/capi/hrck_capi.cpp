#include "hrck/hrck.h"

#include "error.hpp"
#include "ktheory.hpp"
#include "pipeline.hpp"
#include "presentation.hpp"
#include "text.hpp"
#include "tiles.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

struct hrck_session {
  hrck::pipeline::RunOptions options;
  hrck_format format = HRCK_FORMAT_TEXT;
  bool timings = false;
};

struct hrck_report {
  hrck::report::ReportDocument doc;
  hrck_format format;
  bool timings;
  mutable std::string rendered;
};

struct hrck_presentation {
  hrck::presentation::TrianglePresentation value;
};

struct hrck_building {
  hrck::tiles::BuildingSystem value;
};

struct hrck_ktheory {
  std::string k0, k1, order;
  size_t free_rank;
};

namespace {

thread_local std::string last_error;

hrck_status status_for(hrck::ErrorKind kind) {
  using hrck::ErrorKind;
  switch (kind) {
    case ErrorKind::Parse: return HRCK_E_PARSE;
    case ErrorKind::Io: return HRCK_E_IO;
    case ErrorKind::Domain: return HRCK_E_DOMAIN;
    case ErrorKind::Unsupported: return HRCK_E_UNSUPPORTED;
    case ErrorKind::ValidationRequired:
    case ErrorKind::Refused: return HRCK_E_VALIDATION;
    case ErrorKind::Consistency: return HRCK_E_CONSISTENCY;
  }
  return HRCK_E_INTERNAL;
}

// Runs `body`, translating exceptions into status codes and last_error.
template <class F>
hrck_status guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const hrck::Error& e) {
    last_error = e.what();
    return status_for(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return HRCK_E_INTERNAL;
}

hrck_status argument_error(const char* what) {
  last_error = what;
  return HRCK_E_ARGUMENT;
}

std::optional<std::string> optional_path(const char* p) {
  if (!p || !*p) return std::nullopt;
  return std::string(p);
}

template <class F>
hrck_status run_command(hrck_session* s, hrck_report** out, F&& command) {
  if (!out) return argument_error("null output pointer");
  *out = nullptr;
  if (!s) return argument_error("null session");
  return guarded([&] {
    hrck::pipeline::Run run = command(s->options);
    *out = new hrck_report{std::move(run.report), s->format, s->timings, {}};
    if (run.exit_code != hrck::pipeline::kOk) {
      last_error = run.failure;
      return HRCK_E_VALIDATION;
    }
    return HRCK_OK;
  });
}

}  // namespace

extern "C" {

const char* hrck_version(void) { return hrck::report::kToolVersion; }

const char* hrck_last_error(void) { return last_error.c_str(); }

int hrck_status_exit_code(hrck_status status) {
  switch (status) {
    case HRCK_OK: return 0;
    case HRCK_E_VALIDATION: return 1;
    case HRCK_E_CONSISTENCY:
    case HRCK_E_INTERNAL: return 3;
    default: return 2;
  }
}

void hrck_string_free(char* s) { std::free(s); }

hrck_status hrck_session_create(hrck_session** out) {
  if (!out) return argument_error("null output pointer");
  return guarded([&] {
    *out = new hrck_session{};
    return HRCK_OK;
  });
}

void hrck_session_destroy(hrck_session* session) { delete session; }

hrck_status hrck_session_set_threads(hrck_session* session, unsigned threads) {
  if (!session) return argument_error("null session");
  session->options.threads = threads == 0 ? 1 : threads;
  return HRCK_OK;
}

hrck_status hrck_session_set_format(hrck_session* session, hrck_format format) {
  if (!session) return argument_error("null session");
  if (format != HRCK_FORMAT_TEXT && format != HRCK_FORMAT_JSON) return argument_error("unknown format");
  session->format = format;
  return HRCK_OK;
}

hrck_status hrck_session_set_timings(hrck_session* session, int enabled) {
  if (!session) return argument_error("null session");
  session->timings = enabled != 0;
  return HRCK_OK;
}

hrck_status hrck_session_set_periodicity_bound(hrck_session* session, int bound) {
  if (!session) return argument_error("null session");
  if (bound < 1) return argument_error("periodicity bound must be at least 1");
  session->options.periodicity_bound = bound;
  return HRCK_OK;
}

hrck_status hrck_session_set_override_conditions(hrck_session* session, int enabled) {
  if (!session) return argument_error("null session");
  session->options.override_conditions = enabled != 0;
  return HRCK_OK;
}

hrck_status hrck_validate_presentation(hrck_session* s, const char* path, hrck_report** out) {
  if (!path) return argument_error("null path");
  return run_command(s, out, [&](const auto& o) { return hrck::pipeline::validate_presentation(path, o); });
}

hrck_status hrck_validate_graph(hrck_session* s, const char* path, hrck_report** out) {
  if (!path) return argument_error("null path");
  return run_command(s, out, [&](const auto& o) { return hrck::pipeline::validate_graph(path, o); });
}

hrck_status hrck_ktheory_presentation(hrck_session* s, const char* path, const char* matrix_out,
                                      hrck_report** out) {
  if (!path) return argument_error("null path");
  return run_command(s, out, [&](const auto& o) {
    return hrck::pipeline::ktheory_presentation(path, optional_path(matrix_out), o);
  });
}

hrck_status hrck_ktheory_graph(hrck_session* s, const char* path, const char* matrix_out, hrck_report** out) {
  if (!path) return argument_error("null path");
  return run_command(s, out, [&](const auto& o) {
    return hrck::pipeline::ktheory_graph(path, optional_path(matrix_out), o);
  });
}

hrck_status hrck_ktheory_tensor(hrck_session* s, const char* first, const char* second, const char* matrix_out,
                                hrck_report** out) {
  if (!first || !second) return argument_error("null path");
  return run_command(s, out, [&](const auto& o) {
    return hrck::pipeline::ktheory_tensor(first, second, optional_path(matrix_out), o);
  });
}

hrck_status hrck_ktheory_matrices(hrck_session* s, const char* path, hrck_report** out) {
  if (!path) return argument_error("null path");
  return run_command(s, out, [&](const auto& o) { return hrck::pipeline::ktheory_matrices(path, o); });
}

hrck_status hrck_search(hrck_session* s, int q, const char* lambda_path, size_t limit, const char* out_dir,
                        hrck_report** out) {
  return run_command(s, out, [&](const auto& o) {
    hrck::pipeline::SearchRequest request;
    request.q = q;
    request.lambda_path = optional_path(lambda_path);
    request.limit = limit;
    request.out_dir = optional_path(out_dir);
    return hrck::pipeline::search(request, o);
  });
}

hrck_status hrck_lambda_file(const char* presentation_path, char** out) {
  if (!out) return argument_error("null output pointer");
  *out = nullptr;
  if (!presentation_path) return argument_error("null path");
  return guarded([&] {
    const std::string text = hrck::pipeline::lambda_file(presentation_path);
    char* buffer = static_cast<char*>(std::malloc(text.size() + 1));
    if (!buffer) throw std::bad_alloc();
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    *out = buffer;
    return HRCK_OK;
  });
}

const char* hrck_report_text(const hrck_report* report) {
  if (!report) return "";
  report->rendered = report->format == HRCK_FORMAT_JSON ? report->doc.render_json(report->timings)
                                                        : report->doc.render_text(report->timings);
  return report->rendered.c_str();
}

void hrck_report_destroy(hrck_report* report) { delete report; }

hrck_status hrck_presentation_parse(const char* text, hrck_presentation** out) {
  if (!out) return argument_error("null output pointer");
  *out = nullptr;
  if (!text) return argument_error("null text");
  return guarded([&] {
    *out = new hrck_presentation{hrck::presentation::parse_presentation(text)};
    return HRCK_OK;
  });
}

void hrck_presentation_destroy(hrck_presentation* p) { delete p; }

int hrck_presentation_order(const hrck_presentation* p) { return p ? p->value.q() : 0; }

size_t hrck_presentation_triple_count(const hrck_presentation* p) { return p ? p->value.triples().size() : 0; }

hrck_status hrck_presentation_validate(const hrck_presentation* p) {
  if (!p) return argument_error("null presentation");
  return guarded([&] {
    const auto v = hrck::presentation::validate_triangle_presentation(p->value);
    if (v.ok) return HRCK_OK;
    last_error = v.axiom + ": " + v.witness;
    return HRCK_E_VALIDATION;
  });
}

hrck_status hrck_building_create(const hrck_presentation* p, hrck_building** out) {
  if (!out) return argument_error("null output pointer");
  *out = nullptr;
  if (!p) return argument_error("null presentation");
  return guarded([&] {
    *out = new hrck_building{hrck::tiles::build_building_system(p->value)};
    return HRCK_OK;
  });
}

void hrck_building_destroy(hrck_building* b) { delete b; }

size_t hrck_building_tile_count(const hrck_building* b) { return b ? b->value.tiles.size() : 0; }

hrck_status hrck_building_matrix_entry(const hrck_building* b, int direction, size_t row, size_t col, int* value) {
  if (!b || !value) return argument_error("null argument");
  if (direction != 1 && direction != 2) return argument_error("direction must be 1 or 2");
  const auto& m = b->value.system.matrix(direction - 1);
  if (row >= m.size() || col >= m.size()) return argument_error("index out of range");
  *value = m.at(static_cast<hrck::Index>(row), static_cast<hrck::Index>(col)) ? 1 : 0;
  return HRCK_OK;
}

hrck_status hrck_building_ktheory(hrck_session* s, const hrck_building* b, hrck_ktheory** out) {
  if (!out) return argument_error("null output pointer");
  *out = nullptr;
  if (!s || !b) return argument_error("null argument");
  return guarded([&] {
    hrck::ktheory::Rank2Options opts;
    opts.linear.threads = s->options.threads;
    opts.linear.dense_threshold = s->options.dense_threshold;
    opts.conditions.periodicity_bound = s->options.periodicity_bound;
    opts.override_conditions = s->options.override_conditions;
    const auto k = hrck::ktheory::building_k_theory(b->value, opts);
    *out = new hrck_ktheory{k.k0.render(), k.k1.render(), k.identity_order.to_string(), k.k0.free_rank()};
    return HRCK_OK;
  });
}

void hrck_ktheory_destroy(hrck_ktheory* k) { delete k; }

const char* hrck_ktheory_k0(const hrck_ktheory* k) { return k ? k->k0.c_str() : ""; }
const char* hrck_ktheory_k1(const hrck_ktheory* k) { return k ? k->k1.c_str() : ""; }
const char* hrck_ktheory_identity_order(const hrck_ktheory* k) { return k ? k->order.c_str() : ""; }
size_t hrck_ktheory_free_rank(const hrck_ktheory* k) { return k ? k->free_rank : 0; }

}  // extern "C"
