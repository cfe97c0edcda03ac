#include "pipeline.hpp"

#include "error.hpp"
#include "ktheory.hpp"
#include "plane.hpp"
#include "presentation.hpp"
#include "rank1.hpp"
#include "text.hpp"
#include "tiles.hpp"
#include "words.hpp"

#include <chrono>
#include <filesystem>

namespace hrck::pipeline {

namespace {

using Clock = std::chrono::steady_clock;

class StageTimer {
public:
  StageTimer(report::ReportDocument& doc, std::string stage) : doc_(doc), stage_(std::move(stage)) {}
  ~StageTimer() {
    doc_.add_timing(stage_, std::chrono::duration<double, std::milli>(Clock::now() - start_).count());
  }

private:
  report::ReportDocument& doc_;
  std::string stage_;
  Clock::time_point start_ = Clock::now();
};

zlin::Options linear_options(const RunOptions& o) {
  zlin::Options z;
  z.threads = std::max(1u, o.threads);
  z.dense_threshold = o.dense_threshold;
  return z;
}

ktheory::Rank2Options rank2_options(const RunOptions& o) {
  ktheory::Rank2Options r;
  r.linear = linear_options(o);
  r.conditions.periodicity_bound = o.periodicity_bound;
  r.override_conditions = o.override_conditions;
  return r;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void write_plane_validation(report::ReportDocument& doc, const plane::ValidationReport& v) {
  doc.add("valid", yes_no(v.ok));
  if (!v.ok) {
    doc.add("failed", v.axiom);
    doc.add("witness", v.witness);
  }
}

struct LoadedPresentation {
  presentation::TrianglePresentation p;
  plane::ValidationReport validity;
};

LoadedPresentation load_presentation(report::ReportDocument& doc, const std::string& path) {
  const std::string content = text::read_file(path);
  doc.add_input(path, content);
  LoadedPresentation out;
  {
    StageTimer t(doc, "parse");
    out.p = presentation::parse_presentation(content);
  }
  StageTimer t(doc, "presentation");
  const auto& p = out.p;
  doc.begin("presentation");
  doc.add("q", std::to_string(p.q()));
  doc.add("generators", std::to_string(p.generator_count()));
  doc.add("relators", std::to_string(p.relators().size()));
  doc.add("triples", std::to_string(p.triples().size()));
  out.validity = presentation::validate_triangle_presentation(p);
  write_plane_validation(doc, out.validity);
  if (out.validity.ok) {
    for (Index x = 0; x < p.generator_count(); ++x) {
      std::string line;
      for (Index y : p.lambda_derived(x)) line += (line.empty() ? "" : ",") + p.generator(y);
      doc.add("lambda " + p.generator(x), line);
    }
    doc.begin("plane");
    const auto corr = presentation::derived_correspondence(p);
    doc.add("order", std::to_string(corr.plane.order()));
    doc.add("points", std::to_string(corr.plane.point_count()));
    doc.add("lines", std::to_string(corr.plane.line_count()));
    write_plane_validation(doc, plane::validate_plane(corr.plane));
  }
  return out;
}

struct LoadedGraph {
  rank1::FiniteGraph g;
  rank1::GraphCheck check;
};

LoadedGraph load_graph(report::ReportDocument& doc, const std::string& path, std::string_view content) {
  LoadedGraph out;
  out.g = rank1::parse_graph(content);
  out.check = rank1::validate_graph(out.g);
  doc.begin("graph " + std::filesystem::path(path).filename().string());
  doc.add("vertices", std::to_string(out.g.vertex_count));
  doc.add("edges", std::to_string(out.g.edges.size()));
  doc.add("valid", yes_no(out.check.ok));
  if (!out.check.ok) doc.add("failed", out.check.error);
  for (const auto& w : out.check.warnings) doc.add("warning", w);
  return out;
}

void write_matrix_summary(report::ReportDocument& doc, const TransitionSystem& s) {
  doc.add("letters", std::to_string(s.size()));
  for (std::size_t i = 0; i < s.rank(); ++i) {
    const auto& m = s.matrix(i);
    std::size_t rmin = SIZE_MAX, rmax = 0, cmin = SIZE_MAX, cmax = 0;
    for (Index a = 0; a < m.size(); ++a) {
      rmin = std::min(rmin, m.row_sum(a));
      rmax = std::max(rmax, m.row_sum(a));
      cmin = std::min(cmin, m.column_sum(a));
      cmax = std::max(cmax, m.column_sum(a));
    }
    const std::string name = s.rank() == 1 ? "M" : "M" + std::to_string(i + 1);
    auto range = [](std::size_t lo, std::size_t hi) {
      return lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi);
    };
    if (m.size() == 0) rmin = cmin = 0;
    doc.add(name + " nonzeros", std::to_string(m.nonzeros()));
    doc.add(name + " row_sums", range(rmin, rmax));
    doc.add(name + " column_sums", range(cmin, cmax));
  }
}

words::ConditionReport write_conditions(report::ReportDocument& doc, const TransitionSystem& s, const RunOptions& o) {
  StageTimer t(doc, "conditions");
  words::ConditionOptions opts;
  opts.periodicity_bound = o.periodicity_bound;
  auto report = words::check_conditions(s, opts);
  doc.begin("conditions");
  doc.add_lines(report.render());
  doc.add("all_pass", yes_no(report.all_pass()));
  return report;
}

void write_ktheory(report::ReportDocument& doc, const ktheory::KTheoryResult& k) {
  doc.begin("ktheory");
  doc.add("K0", k.k0.render());
  doc.add("K1", k.k1.render());
  doc.add("K0 invariant_factors", k.k0.render_invariant_factors());
  doc.add("K1 invariant_factors", k.k1.render_invariant_factors());
  doc.add("free_rank", std::to_string(k.k0.free_rank()));
  doc.add("order_of_identity", k.identity_order.to_string());
  for (const auto& d : k.diagnostics) doc.add("diagnostic " + d.name, ktheory::to_string(d.status));
  for (const auto& d : k.diagnostics)
    if (!d.detail.empty()) doc.add("note " + d.name, d.detail);
}

void fail(Run& run, std::string reason) {
  run.exit_code = kFailure;
  run.failure = std::move(reason);
}

std::string failing_diagnostics(const ktheory::KTheoryResult& k) {
  std::string out;
  for (const auto& d : k.diagnostics)
    if (d.status == ktheory::Status::Fail) out += (out.empty() ? "" : ",") + d.name;
  return out;
}

std::string failing_conditions(const words::ConditionReport& r) {
  std::string out;
  for (const auto& c : r.results)
    if (c.verdict == words::Verdict::Fail || c.verdict == words::Verdict::Inconclusive)
      out += (out.empty() ? "" : ",") + c.name;
  return out;
}

void export_matrices(const std::optional<std::string>& dir, const TransitionSystem& s, const std::string* tile_table) {
  if (!dir) return;
  std::error_code ec;
  std::filesystem::create_directories(*dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + *dir + ": " + ec.message());
  text::write_file((std::filesystem::path(*dir) / "matrices.txt").string(), serialize_matrices(s));
  if (tile_table) text::write_file((std::filesystem::path(*dir) / "tiles.txt").string(), *tile_table);
}

void write_rank1_alphabet(report::ReportDocument& doc, const TransitionSystem& s) {
  doc.begin("alphabet");
  std::string letters;
  for (const auto& a : s.alphabet) letters += (letters.empty() ? "" : ",") + a;
  doc.add("order", letters);
  write_matrix_summary(doc, s);
  if (s.decoration) {
    std::string d;
    for (const auto& n : s.decoration->names) d += (d.empty() ? "" : ",") + n;
    doc.add("decoration", d);
  }
  const auto simple = rank1::ck_simplicity_check(s.matrix(0));
  doc.add("simple", yes_no(simple.simple));
  doc.add("simplicity_reason", simple.reason);
}

// A graph file, or a triplet file holding one matrix.
TransitionSystem load_rank1(report::ReportDocument& doc, const std::string& path, bool& ok) {
  const std::string content = text::read_file(path);
  doc.add_input(path, content);
  const auto lines = text::tokenize(content);
  ok = true;
  if (!lines.empty() && lines.front().tokens.front() == "vertices") {
    auto loaded = load_graph(doc, path, content);
    if (!loaded.check.ok) {
      ok = false;
      return {};
    }
    return rank1::graph_to_matrix(loaded.g);
  }
  auto blocks = parse_matrices(content);
  if (blocks.size() != 1)
    throw ParseError(1, std::filesystem::path(path).filename().string() + ": expected exactly one matrix, found " +
                            std::to_string(blocks.size()));
  doc.begin("matrix " + std::filesystem::path(path).filename().string());
  doc.add("name", blocks.front().name);
  return system_from_matrices(std::move(blocks));
}

}  // namespace

Run validate_presentation(const std::string& path, const RunOptions&) {
  Run run{report::ReportDocument("validate"), kOk, {}};
  const auto loaded = load_presentation(run.report, path);
  if (!loaded.validity.ok) fail(run, "invalid presentation: " + loaded.validity.axiom);
  return run;
}

Run validate_graph(const std::string& path, const RunOptions&) {
  Run run{report::ReportDocument("validate"), kOk, {}};
  const std::string content = text::read_file(path);
  run.report.add_input(path, content);
  const auto loaded = load_graph(run.report, path, content);
  if (!loaded.check.ok) fail(run, "invalid graph: " + loaded.check.error);
  return run;
}

Run ktheory_presentation(const std::string& path, const std::optional<std::string>& matrix_out,
                         const RunOptions& options) {
  Run run{report::ReportDocument("ktheory"), kOk, {}};
  auto& doc = run.report;
  const auto loaded = load_presentation(doc, path);
  if (!loaded.validity.ok) {
    fail(run, "invalid presentation: " + loaded.validity.axiom);
    return run;
  }
  std::optional<tiles::BuildingSystem> building;
  {
    StageTimer t(doc, "alphabet");
    building = tiles::build_building_system(loaded.p);
  }
  doc.begin("alphabet");
  doc.add("tiles", std::to_string(building->tiles.size()));
  write_matrix_summary(doc, building->system);
  const std::string table = tiles::serialize_tile_table(*building);
  export_matrices(matrix_out, building->system, &table);

  const auto conditions = write_conditions(doc, building->system, options);
  if (!conditions.all_pass() && !options.override_conditions) {
    doc.begin("ktheory");
    doc.add("refused", "conditions not satisfied: " + failing_conditions(conditions));
    fail(run, "conditions not satisfied: " + failing_conditions(conditions));
    return run;
  }
  StageTimer t(doc, "ktheory");
  const auto k = ktheory::building_k_theory(*building, rank2_options(options), &conditions);
  write_ktheory(doc, k);
  if (!k.diagnostics_pass()) fail(run, "failing diagnostic: " + failing_diagnostics(k));
  return run;
}

Run ktheory_graph(const std::string& path, const std::optional<std::string>& matrix_out, const RunOptions& options) {
  Run run{report::ReportDocument("ktheory"), kOk, {}};
  auto& doc = run.report;
  const std::string content = text::read_file(path);
  doc.add_input(path, content);
  const auto loaded = load_graph(doc, path, content);
  if (!loaded.check.ok) {
    fail(run, "invalid graph: " + loaded.check.error);
    return run;
  }
  const auto system = rank1::graph_to_matrix(loaded.g);
  write_rank1_alphabet(doc, system);
  export_matrices(matrix_out, system, nullptr);
  write_conditions(doc, system, options);
  StageTimer t(doc, "ktheory");
  write_ktheory(doc, ktheory::k_theory_rank1(system.matrix(0), linear_options(options)));
  return run;
}

Run ktheory_tensor(const std::string& first, const std::string& second, const std::optional<std::string>& matrix_out,
                   const RunOptions& options) {
  Run run{report::ReportDocument("ktheory"), kOk, {}};
  auto& doc = run.report;
  bool ok_a = true, ok_b = true;
  const auto a = load_rank1(doc, first, ok_a);
  const auto b = load_rank1(doc, second, ok_b);
  if (!ok_a || !ok_b) {
    fail(run, "invalid graph input");
    return run;
  }
  const auto ka = ktheory::k_theory_rank1(a.matrix(0), linear_options(options));
  const auto kb = ktheory::k_theory_rank1(b.matrix(0), linear_options(options));
  doc.begin("factors");
  doc.add("K0 first", ka.k0.render());
  doc.add("K1 first", ka.k1.render());
  doc.add("K0 second", kb.k0.render());
  doc.add("K1 second", kb.k1.render());

  const auto system = ktheory::tensor_system(a, b);
  doc.begin("alphabet");
  write_matrix_summary(doc, system);
  export_matrices(matrix_out, system, nullptr);
  const auto conditions = write_conditions(doc, system, options);
  if (!conditions.all_pass() && !options.override_conditions) {
    doc.begin("ktheory");
    doc.add("refused", "conditions not satisfied: " + failing_conditions(conditions));
    fail(run, "conditions not satisfied: " + failing_conditions(conditions));
    return run;
  }
  StageTimer t(doc, "ktheory");
  auto k = ktheory::k_theory_rank2(system, rank2_options(options), &conditions);
  ktheory::attach_kunneth(k, ktheory::kunneth_predict(ka, kb));
  write_ktheory(doc, k);
  if (!k.diagnostics_pass()) fail(run, "failing diagnostic: " + failing_diagnostics(k));
  return run;
}

Run ktheory_matrices(const std::string& path, const RunOptions& options) {
  Run run{report::ReportDocument("ktheory"), kOk, {}};
  auto& doc = run.report;
  const std::string content = text::read_file(path);
  doc.add_input(path, content);
  const auto system = system_from_matrices(parse_matrices(content));
  doc.begin("alphabet");
  write_matrix_summary(doc, system);
  const auto conditions = write_conditions(doc, system, options);
  StageTimer t(doc, "ktheory");
  if (system.rank() == 1) {
    write_ktheory(doc, ktheory::k_theory_rank1(system.matrix(0), linear_options(options)));
    return run;
  }
  if (!conditions.all_pass() && !options.override_conditions) {
    doc.begin("ktheory");
    doc.add("refused", "conditions not satisfied: " + failing_conditions(conditions));
    fail(run, "conditions not satisfied: " + failing_conditions(conditions));
    return run;
  }
  const auto k = ktheory::k_theory_rank2(system, rank2_options(options), &conditions);
  write_ktheory(doc, k);
  if (!k.diagnostics_pass()) fail(run, "failing diagnostic: " + failing_diagnostics(k));
  return run;
}

Run search(const SearchRequest& request, const RunOptions&) {
  if (request.q > kMaxSearchOrder)
    throw Error(ErrorKind::Unsupported, "search is limited to q <= " + std::to_string(kMaxSearchOrder) +
                                            "; got q=" + std::to_string(request.q));
  Run run{report::ReportDocument("search"), kOk, {}};
  auto& doc = run.report;
  plane::PointLineCorrespondence corr;
  if (request.lambda_path) {
    const std::string content = text::read_file(*request.lambda_path);
    doc.add_input(*request.lambda_path, content);
    corr = plane::parse_correspondence(content);
    if (corr.plane.order() != request.q)
      throw DomainError("correspondence is for q=" + std::to_string(corr.plane.order()) + ", not q=" +
                        std::to_string(request.q));
  } else {
    corr.plane = plane::build_pg2(request.q);
    for (Index p = 0; p < corr.plane.point_count(); ++p) corr.lambda.push_back(p);
  }
  doc.begin("correspondence");
  doc.add("q", std::to_string(request.q));
  doc.add("lambda", request.lambda_path ? "file" : "polarity");
  const auto validity = plane::validate_correspondence(corr);
  write_plane_validation(doc, validity);
  if (!validity.ok) {
    fail(run, "invalid correspondence: " + validity.axiom);
    return run;
  }

  presentation::SearchOptions opts;
  opts.limit = request.limit;
  opts.max_nodes = request.max_nodes;
  presentation::SearchResult result;
  {
    StageTimer t(doc, "search");
    result = presentation::search_presentations(corr, opts);
  }
  doc.begin("search");
  doc.add("limit", std::to_string(request.limit));
  doc.add("found", std::to_string(result.presentations.size()));
  doc.add("partial", yes_no(result.partial));
  doc.add("nodes", std::to_string(result.nodes));
  if (request.out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*request.out_dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create " + *request.out_dir + ": " + ec.message());
  }
  for (std::size_t i = 0; i < result.presentations.size(); ++i) {
    const auto& p = result.presentations[i];
    std::string relators;
    for (const auto& t : p.relators()) relators += (relators.empty() ? "" : " ") + presentation::format_triple(p, t);
    doc.add("presentation " + std::to_string(i + 1), relators);
    if (request.out_dir) {
      const auto file = std::filesystem::path(*request.out_dir) / ("presentation_" + std::to_string(i + 1) + ".tri");
      text::write_file(file.string(), presentation::serialize_presentation(p));
    }
  }
  if (result.presentations.empty())
    fail(run, result.partial ? "no presentation found before the search guard fired" : "no presentation found");
  return run;
}

std::string lambda_file(const std::string& presentation_path) {
  const auto p = presentation::parse_presentation(text::read_file(presentation_path));
  const auto v = presentation::validate_triangle_presentation(p);
  if (!v.ok) throw Error(ErrorKind::ValidationRequired, "presentation is not valid: " + v.axiom + " (" + v.witness + ")");
  return plane::serialize_correspondence(presentation::derived_correspondence(p));
}

}  // namespace hrck::pipeline
