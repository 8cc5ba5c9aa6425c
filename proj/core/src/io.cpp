#include "digraphon/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "digraphon/error.hpp"
#include "json.hpp"

namespace digraphon::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::kSchema, std::string("invalid JSON: ") + e.what());
  }
}

const json& member(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key))
    fail(ErrorKind::kSchema, std::string("missing member \"") + key + "\"");
  return doc.at(key);
}

template <typename T>
T get_as(const json& value, const char* what) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    fail(ErrorKind::kSchema, std::string("member \"") + what + "\" has the wrong type");
  }
}

RealMatrix matrix_from(const json& rows, std::size_t k, const char* what) {
  const auto values = get_as<std::vector<std::vector<double>>>(rows, what);
  if (values.size() != k)
    fail(ErrorKind::kSchema, std::string("\"") + what + "\" must have k rows");
  RealMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    if (values[i].size() != k)
      fail(ErrorKind::kSchema, std::string("\"") + what + "\" must be k x k");
    for (std::size_t j = 0; j < k; ++j) m(i, j) = values[i][j];
  }
  return m;
}

ordered_json matrix_to(const RealMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    rows.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
  return rows;
}

ordered_json config_object(std::string_view config_json) {
  if (config_json.empty()) return ordered_json::object();
  try {
    return ordered_json::parse(config_json);
  } catch (const json::exception& e) {
    fail(ErrorKind::kSchema, std::string("invalid config JSON: ") + e.what());
  }
}

std::string config_comment(std::string_view config_json) {
  return "# config: " + config_object(config_json).dump() + "\n";
}

ordered_json complex_to(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json spectrum_to(const Spectrum& sp) {
  ordered_json points = ordered_json::array();
  for (const auto& p : sp.points())
    points.push_back({{"re", p.value.real()}, {"im", p.value.imag()}, {"mult", p.mult}});
  return {{"points", points}, {"includes_zero_spectral_point", sp.includes_zero_spectral_point()}};
}

}  // namespace

std::string format_real(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

// --- digraphs ----------------------------------------------------------------------

std::string digraph_to_json(const Digraph& g) {
  ordered_json edges = ordered_json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  ordered_json doc{{"n", g.size()}, {"allow_bidirected", g.allow_bidirected()}, {"edges", edges}};
  return doc.dump() + "\n";
}

Digraph digraph_from_json(std::string_view text) {
  const json doc = parse(text);
  const auto n = get_as<std::size_t>(member(doc, "n"), "n");
  const bool bidirected =
      doc.contains("allow_bidirected") ? get_as<bool>(doc.at("allow_bidirected"), "allow_bidirected")
                                       : false;
  const auto pairs = get_as<std::vector<std::vector<std::size_t>>>(member(doc, "edges"), "edges");
  std::vector<Edge> edges;
  for (const auto& p : pairs) {
    if (p.size() != 2) fail(ErrorKind::kSchema, "each edge must be a pair [i, j]");
    edges.emplace_back(p[0], p[1]);
  }
  return Digraph(n, edges, bidirected);
}

std::string digraph_to_edge_list(const Digraph& g) {
  std::string out = "# n=" + std::to_string(g.size()) +
                    " bidirected=" + (g.allow_bidirected() ? "1" : "0") + "\n";
  for (const auto& [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

Digraph digraph_from_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::kSchema, "edge list is empty");
  std::size_t n = 0;
  int bidirected = 0;
  if (std::sscanf(line.c_str(), "# n=%zu bidirected=%d", &n, &bidirected) != 2 ||
      (bidirected != 0 && bidirected != 1))
    fail(ErrorKind::kSchema, "edge list header must be \"# n=<n> bidirected=<0|1>\"");
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    long long u = -1;
    long long v = -1;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra) || u < 0 || v < 0)
      fail(ErrorKind::kSchema, "malformed edge line \"" + line + "\"");
    edges.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
  }
  return Digraph(n, edges, bidirected == 1);
}

// --- kernels -----------------------------------------------------------------------

std::string kernel_to_json(const StepKernel& w) {
  ordered_json doc{{"k", w.k()},
                   {"measures", w.measures()},
                   {"values", matrix_to(w.values())},
                   {"bound", w.bound()}};
  return doc.dump() + "\n";
}

std::string digraphon_to_json(const StepDigraphon& w) {
  ordered_json doc{{"type", "digraphon"},
                   {"k", w.k()},
                   {"measures", w.measures()},
                   {"values", matrix_to(w.values())},
                   {"bound", w.bound()}};
  return doc.dump() + "\n";
}

StepKernel kernel_from_json(std::string_view text) {
  const json doc = parse(text);
  const auto measures = get_as<std::vector<double>>(member(doc, "measures"), "measures");
  const std::size_t k =
      doc.contains("k") ? get_as<std::size_t>(doc.at("k"), "k") : measures.size();
  if (measures.size() != k) fail(ErrorKind::kSchema, "\"measures\" must have k entries");
  RealMatrix values = matrix_from(member(doc, "values"), k, "values");
  if (doc.contains("bound"))
    return StepKernel(measures, std::move(values), get_as<double>(doc.at("bound"), "bound"));
  return StepKernel(measures, std::move(values));
}

StepDigraphon digraphon_from_json(std::string_view text) {
  return StepDigraphon(kernel_from_json(text));
}

std::string pair_to_json(const BidirectedStepPair& p) {
  ordered_json doc{{"measures", p.measures()},
                   {"W1", matrix_to(p.w1().values())},
                   {"W2", matrix_to(p.w2().values())}};
  return doc.dump() + "\n";
}

BidirectedStepPair pair_from_json(std::string_view text) {
  const json doc = parse(text);
  const auto measures = get_as<std::vector<double>>(member(doc, "measures"), "measures");
  const std::size_t k = measures.size();
  return BidirectedStepPair(measures, matrix_from(member(doc, "W1"), k, "W1"),
                            matrix_from(member(doc, "W2"), k, "W2"));
}

bool is_pair_document(std::string_view text) {
  const json doc = parse(text);
  return doc.is_object() && doc.contains("W1");
}

// --- spectra and reports -------------------------------------------------------------

std::string spectrum_to_csv(const Spectrum& sp) {
  std::string out = "re,im,mult\n";
  bool zero_listed = false;
  for (const auto& p : sp.points()) {
    zero_listed = zero_listed || p.value == Complex{};
    out += format_real(p.value.real()) + "," + format_real(p.value.imag()) + "," +
           std::to_string(p.mult) + "\n";
  }
  if (sp.includes_zero_spectral_point() && !zero_listed) out += "0,0,0\n";
  return out;
}

std::string spectrum_to_json(const Spectrum& sp) { return spectrum_to(sp).dump() + "\n"; }

std::string trace_reports_to_csv(const std::vector<TraceCheckReport>& rows,
                                 std::string_view config_json) {
  std::string out = config_comment(config_json) + "ell,lhs,rhs,abs_error\n";
  for (const auto& r : rows)
    out += std::to_string(r.ell) + "," + format_real(r.lhs) + "," + format_real(r.rhs) + "," +
           format_real(r.abs_error) + "\n";
  return out;
}

std::string trace_reports_to_json(const std::vector<TraceCheckReport>& rows,
                                  std::string_view config_json) {
  ordered_json list = ordered_json::array();
  for (const auto& r : rows)
    list.push_back({{"ell", r.ell}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"abs_error", r.abs_error}});
  ordered_json doc{{"config", config_object(config_json)}, {"rows", list}};
  return doc.dump(2) + "\n";
}

std::string convergence_to_json(const ConvergenceReport& report, std::string_view config_json) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.rows) {
    ordered_json ledgers = ordered_json::array();
    for (const auto& l : r.ledgers)
      ledgers.push_back({{"target", complex_to(l.target)},
                         {"epsilon", l.epsilon},
                         {"matched_mass", l.matched_mass},
                         {"expected", l.expected}});
    ordered_json row{{"n", r.n},
                     {"seed", r.seed},
                     {"hausdorff", r.hausdorff},
                     {"ledgers", ledgers},
                     {"singular_bound_ok", r.singular_bound_ok},
                     {"observed", spectrum_to(r.observed)}};
    if (r.nu_gaps) row["nu_gaps"] = {r.nu_gaps->first, r.nu_gaps->second};
    if (r.cut_metric) row["cut_metric"] = *r.cut_metric;
    rows.push_back(std::move(row));
  }
  ordered_json summaries = ordered_json::array();
  for (const auto& s : report.summaries)
    summaries.push_back({{"n", s.n},
                         {"median_hausdorff", s.median_hausdorff},
                         {"matched_fraction", s.matched_fraction}});
  ordered_json doc{{"config", config_object(config_json)},
                   {"master_seed", report.master_seed},
                   {"epsilon", report.epsilon},
                   {"limit_spectrum", spectrum_to(report.limit_spectrum)},
                   {"summaries", summaries},
                   {"rows", rows}};
  return doc.dump(2) + "\n";
}

std::string convergence_to_csv(const ConvergenceReport& report, std::string_view config_json) {
  std::string out = config_comment(config_json) + "n,seed,hausdorff";
  std::size_t targets = 0;
  for (const auto& p : report.limit_spectrum.points()) {
    if (p.value == Complex{}) continue;
    const std::string tag = "lambda" + std::to_string(targets++);
    out += "," + tag + "_matched," + tag + "_expected";
  }
  const bool has_gaps = !report.rows.empty() && report.rows.front().nu_gaps.has_value();
  if (has_gaps) out += ",nu_gap_w,nu_gap_wn,cut_metric";
  out += "\n";
  for (const auto& r : report.rows) {
    out += std::to_string(r.n) + "," + std::to_string(r.seed) + "," + format_real(r.hausdorff);
    for (const auto& l : r.ledgers)
      out += "," + std::to_string(l.matched_mass) + "," + std::to_string(l.expected);
    if (has_gaps && r.nu_gaps)
      out += "," + format_real(r.nu_gaps->first) + "," + format_real(r.nu_gaps->second) + "," +
             format_real(r.cut_metric.value_or(0.0));
    out += "\n";
  }
  return out;
}

std::string bidirected_example_to_json(const BidirectedExampleReport& report,
                                       std::string_view config_json) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"n", r.n},
                    {"seed", r.seed},
                    {"second_eigenvalue", r.second_eigenvalue},
                    {"h1_spectrum_error", r.h1_spectrum_error},
                    {"h2_spectrum_error", r.h2_spectrum_error},
                    {"t_h1", {{"C2", r.t_h1[0]}, {"C3", r.t_h1[1]}, {"C4", r.t_h1[2]}}},
                    {"t_h2", {{"C2", r.t_h2[0]}, {"C3", r.t_h2[1]}, {"C4", r.t_h2[2]}}},
                    {"h1_hausdorff", r.h1_hausdorff},
                    {"h2_hausdorff", r.h2_hausdorff},
                    {"singular_bound_ok", r.singular_bound_ok}});
  }
  ordered_json doc{{"config", config_object(config_json)},
                   {"master_seed", report.master_seed},
                   {"rows", rows}};
  return doc.dump(2) + "\n";
}

std::string bidirected_example_to_csv(const BidirectedExampleReport& report,
                                      std::string_view config_json) {
  std::string out = config_comment(config_json) +
                    "n,seed,second_eigenvalue,h1_spectrum_error,h2_spectrum_error,"
                    "t_c2_h1,t_c3_h1,t_c4_h1,t_c2_h2,t_c3_h2,t_c4_h2,h1_hausdorff,h2_hausdorff\n";
  for (const auto& r : report.rows) {
    out += std::to_string(r.n) + "," + std::to_string(r.seed) + "," +
           format_real(r.second_eigenvalue) + "," + format_real(r.h1_spectrum_error) + "," +
           format_real(r.h2_spectrum_error);
    for (double t : r.t_h1) out += "," + format_real(t);
    for (double t : r.t_h2) out += "," + format_real(t);
    out += "," + format_real(r.h1_hausdorff) + "," + format_real(r.h2_hausdorff) + "\n";
  }
  return out;
}

// --- files --------------------------------------------------------------------------

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kSchema, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::kInvalidArgument, "cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) fail(ErrorKind::kInvalidArgument, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace digraphon::io
