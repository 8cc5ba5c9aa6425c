#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "digraphon/digraph.hpp"
#include "digraphon/limits.hpp"
#include "digraphon/spectra.hpp"
#include "digraphon/stepkernel.hpp"

namespace digraphon::io {

// Parse failures and schema violations throw Error(kSchema). Validation
// failures of the decoded objects keep their own kinds.

/// {"n": int, "allow_bidirected": bool, "edges": [[i, j], ...]}, 0-based.
std::string digraph_to_json(const Digraph& g);
Digraph digraph_from_json(std::string_view text);

/// "# n=<n> bidirected=<0|1>" header, then one "i j" line per edge.
std::string digraph_to_edge_list(const Digraph& g);
Digraph digraph_from_edge_list(std::string_view text);

/// {"k", "measures", "values", "bound"}; digraphons add "type": "digraphon".
std::string kernel_to_json(const StepKernel& w);
std::string digraphon_to_json(const StepDigraphon& w);
StepKernel kernel_from_json(std::string_view text);
/// Accepts any kernel document whose values satisfy the digraphon rules.
StepDigraphon digraphon_from_json(std::string_view text);

/// {"measures", "W1", "W2"}.
std::string pair_to_json(const BidirectedStepPair& p);
BidirectedStepPair pair_from_json(std::string_view text);
/// True if the document has the bidirected-pair shape (a "W1" member).
bool is_pair_document(std::string_view text);

/// Decimal text with 17 significant digits, '.' separator, no locale.
std::string format_real(double x);

/// Header "re,im,mult". When 0 is a spectral point without being an
/// eigenvalue it is written as the row 0,0,0 (multiplicity 0 marks it).
std::string spectrum_to_csv(const Spectrum& sp);
std::string spectrum_to_json(const Spectrum& sp);

/// Reports embed `config_json` (an object) under "config" / as a '#' line.
std::string trace_reports_to_csv(const std::vector<TraceCheckReport>& rows,
                                 std::string_view config_json);
std::string trace_reports_to_json(const std::vector<TraceCheckReport>& rows,
                                  std::string_view config_json);
std::string convergence_to_json(const ConvergenceReport& report, std::string_view config_json);
/// Flat rows: n, seed, hausdorff, then matched/expected per limit eigenvalue.
std::string convergence_to_csv(const ConvergenceReport& report, std::string_view config_json);
std::string bidirected_example_to_json(const BidirectedExampleReport& report,
                                       std::string_view config_json);
std::string bidirected_example_to_csv(const BidirectedExampleReport& report,
                                      std::string_view config_json);

std::string read_file(const std::filesystem::path& path);
/// Writes to a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace digraphon::io
