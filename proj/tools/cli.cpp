#include "cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "digraphon/error.hpp"
#include "digraphon/io.hpp"
#include "digraphon/limits.hpp"
#include "digraphon/spectra.hpp"
#include "digraphon/stepkernel.hpp"
#include "json.hpp"

namespace digraphon::cli {

namespace {

using nlohmann::ordered_json;

constexpr std::pair<Command, const char*> kCommands[] = {
    {Command::kSpectrum, "spectrum"},       {Command::kCutNorm, "cutnorm"},
    {Command::kTraceCheck, "trace-check"},  {Command::kSample, "sample"},
    {Command::kConverge, "converge"},       {Command::kStepConverge, "step-converge"},
    {Command::kBidirected, "section5"},
};

void report_error(std::ostream& diag, std::string_view kind, std::string_view message,
                  std::optional<double> residual = std::nullopt) {
  ordered_json doc{{"error", kind}, {"message", message}};
  if (residual) doc["residual"] = *residual;
  diag << doc.dump() << "\n";
}

const std::filesystem::path& need(const std::optional<std::filesystem::path>& path,
                                  const char* flag) {
  if (!path) fail(ErrorKind::kInvalidArgument, std::string("missing required flag ") + flag);
  return *path;
}

std::string extension(Format f) { return f == Format::kJson ? "json" : "csv"; }

std::filesystem::path output_path(const RunConfig& c) {
  return c.out_dir /
         (std::string(command_name(c.command)) + "_seed" + std::to_string(c.seed) + "." +
          extension(c.format));
}

// A kernel document may also be a bidirected pair; the pair is collapsed.
StepKernel load_kernel(const std::filesystem::path& path) {
  const std::string text = io::read_file(path);
  if (io::is_pair_document(text)) return collapse(io::pair_from_json(text));
  return io::kernel_from_json(text);
}

Digraph load_digraph(const std::filesystem::path& path) {
  const std::string text = io::read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return io::digraph_from_json(text);
  return io::digraph_from_edge_list(text);
}

std::vector<StepKernel> load_sequence(const std::filesystem::path& path) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(io::read_file(path));
  } catch (const ordered_json::exception& e) {
    fail(ErrorKind::kSchema, std::string("invalid kernel sequence: ") + e.what());
  }
  if (!doc.is_array()) fail(ErrorKind::kSchema, "kernel sequence must be a JSON array");
  std::vector<StepKernel> out;
  for (const auto& item : doc) out.push_back(io::kernel_from_json(item.dump()));
  return out;
}

// Wraps a config-free JSON payload together with the config.
std::string with_config(std::string_view config, const char* key, std::string_view payload) {
  ordered_json doc{{"config", ordered_json::parse(config)}, {key, ordered_json::parse(payload)}};
  return doc.dump(2) + "\n";
}

std::string config_line(std::string_view config) {
  return "# config: " + std::string(config) + "\n";
}

std::string run_spectrum(const RunConfig& c, const std::string& config) {
  Spectrum sp = c.digraph ? (c.normalized ? normalized_spectrum(load_digraph(*c.digraph))
                                          : digraph_spectrum(load_digraph(*c.digraph)))
                          : step_spectrum(load_kernel(need(c.kernel, "--kernel or --digraph")));
  if (c.format == Format::kCsv) return config_line(config) + io::spectrum_to_csv(sp);
  return with_config(config, "spectrum", io::spectrum_to_json(sp));
}

std::vector<std::size_t> block_indices(std::uint32_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < 32; ++i)
    if (mask >> i & 1U) out.push_back(i);
  return out;
}

std::string run_cutnorm(const RunConfig& c, const std::string& config) {
  const StepKernel a = load_kernel(need(c.kernel, "--kernel"));
  std::vector<std::pair<std::string, double>> values;
  ordered_json extra = ordered_json::object();
  if (c.other) {
    const StepKernel b = load_kernel(*c.other);
    const auto [ra, rb] = common_refinement(a, b);
    values.emplace_back("cut_metric", cut_metric(ra, rb));
  } else {
    const CutNormResult r = cut_norm_detail(a);
    values.emplace_back("cut_norm", r.value);
    extra["rows"] = block_indices(r.rows);
    extra["columns"] = block_indices(r.columns);
  }
  if (c.format == Format::kCsv) {
    std::string out = config_line(config) + "quantity,value\n";
    for (const auto& [name, v] : values) out += name + "," + io::format_real(v) + "\n";
    return out;
  }
  ordered_json doc{{"config", ordered_json::parse(config)}};
  for (const auto& [name, v] : values) doc[name] = v;
  for (const auto& [key, v] : extra.items()) doc[key] = v;
  return doc.dump(2) + "\n";
}

std::string run_trace_check(const RunConfig& c, const std::string& config) {
  const auto rows = verify_trace_formula(load_kernel(need(c.kernel, "--kernel")), c.ell_max);
  return c.format == Format::kCsv ? io::trace_reports_to_csv(rows, config)
                                  : io::trace_reports_to_json(rows, config);
}

std::string run_sample(const RunConfig& c, const std::string& config) {
  require(c.n >= 1, "sample needs --n >= 1");
  const std::string text = io::read_file(need(c.kernel, "--digraphon"));
  const Digraph g = io::is_pair_document(text)
                        ? sample_bidirected_random(io::pair_from_json(text), c.n, c.seed)
                        : sample_w_random(io::digraphon_from_json(text), c.n, c.seed);
  if (c.format == Format::kCsv) {
    // The header line must stay first for the edge-list reader.
    std::string list = io::digraph_to_edge_list(g);
    const auto cut = list.find('\n') + 1;
    return list.substr(0, cut) + config_line(config) + list.substr(cut);
  }
  ordered_json doc = ordered_json::parse(io::digraph_to_json(g));
  doc["config"] = ordered_json::parse(config);
  return doc.dump() + "\n";
}

std::string run_converge(const RunConfig& c, const std::string& config) {
  const StepDigraphon w = io::digraphon_from_json(io::read_file(need(c.kernel, "--digraphon")));
  const auto report = convergence_experiment(w, c.sizes, c.seeds_per_size, c.epsilon, c.seed);
  return c.format == Format::kCsv ? io::convergence_to_csv(report, config)
                                  : io::convergence_to_json(report, config);
}

std::string run_step_converge(const RunConfig& c, const std::string& config) {
  const StepKernel w = load_kernel(need(c.kernel, "--kernel"));
  const auto sequence = c.sequence ? load_sequence(*c.sequence)
                                   : perturbation_sequence(w, c.steps, c.amplitude, c.seed);
  auto report = step_sequence_convergence(sequence, w, c.epsilon);
  report.master_seed = c.seed;
  return c.format == Format::kCsv ? io::convergence_to_csv(report, config)
                                  : io::convergence_to_json(report, config);
}

std::string run_bidirected(const RunConfig& c, const std::string& config) {
  const auto report = bidirected_example(c.sizes, c.seed);
  return c.format == Format::kCsv ? io::bidirected_example_to_csv(report, config)
                                  : io::bidirected_example_to_json(report, config);
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kBudget:
    case ErrorKind::kOverflow:
      return kExitBudget;
    case ErrorKind::kNumerical:
    case ErrorKind::kGeneration:
      return kExitNumerical;
    default:
      return kExitValidation;
  }
}

const char* command_name(Command c) {
  for (const auto& [cmd, name] : kCommands)
    if (cmd == c) return name;
  return "unknown";
}

std::string config_json(const RunConfig& c) {
  ordered_json doc{{"command", command_name(c.command)}, {"seed", c.seed}};
  auto path = [&](const char* key, const std::optional<std::filesystem::path>& p) {
    if (p) doc[key] = p->generic_string();
  };
  path("kernel", c.kernel);
  path("other", c.other);
  path("digraph", c.digraph);
  path("sequence", c.sequence);
  switch (c.command) {
    case Command::kSpectrum:
      doc["normalized"] = c.normalized;
      break;
    case Command::kTraceCheck:
      doc["ell_max"] = c.ell_max;
      break;
    case Command::kSample:
      doc["n"] = c.n;
      break;
    case Command::kConverge:
      doc["sizes"] = c.sizes;
      doc["seeds_per_size"] = c.seeds_per_size;
      doc["epsilon"] = c.epsilon;
      break;
    case Command::kStepConverge:
      doc["steps"] = c.steps;
      doc["amplitude"] = c.amplitude;
      doc["epsilon"] = c.epsilon;
      break;
    case Command::kBidirected:
      doc["n_list"] = c.sizes;
      break;
    case Command::kCutNorm:
      break;
  }
  doc["format"] = extension(c.format);
  return doc.dump();
}

int run(const RunConfig& c, std::ostream& out, std::ostream& diag) {
  try {
    const std::string config = config_json(c);
    std::string contents;
    switch (c.command) {
      case Command::kSpectrum: contents = run_spectrum(c, config); break;
      case Command::kCutNorm: contents = run_cutnorm(c, config); break;
      case Command::kTraceCheck: contents = run_trace_check(c, config); break;
      case Command::kSample: contents = run_sample(c, config); break;
      case Command::kConverge: contents = run_converge(c, config); break;
      case Command::kStepConverge: contents = run_step_converge(c, config); break;
      case Command::kBidirected: contents = run_bidirected(c, config); break;
    }
    std::filesystem::create_directories(c.out_dir);
    const auto target = output_path(c);
    io::write_file_atomic(target, contents);
    out << target.generic_string() << "\n";
    return kExitOk;
  } catch (const Error& e) {
    report_error(diag, to_string(e.kind()), e.what(), e.residual());
    return exit_code_for(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    report_error(diag, "io", e.what());
    return kExitValidation;
  }
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& diag) {
  CLI::App app{"Digraph limits: spectra, cut norms, densities and convergence experiments"};
  app.require_subcommand(1);
  RunConfig config;
  std::string format = "json";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", config.seed, "Master seed")->capture_default_str();
    sub->add_option("--out", config.out_dir, "Output directory")->capture_default_str();
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
  };

  auto* spectrum = app.add_subcommand("spectrum", "Spectrum of a step kernel or a digraph");
  spectrum->add_option("--kernel", config.kernel, "Kernel, digraphon or pair JSON");
  spectrum->add_option("--digraph", config.digraph, "Digraph JSON or edge list");
  spectrum->add_flag("--normalized", config.normalized, "Divide digraph eigenvalues by n");

  auto* cutnorm = app.add_subcommand("cutnorm", "Cut norm, or cut metric with --other");
  cutnorm->add_option("--kernel", config.kernel, "Kernel JSON")->required();
  cutnorm->add_option("--other", config.other, "Second kernel JSON");

  auto* trace = app.add_subcommand("trace-check", "Cycle densities against spectral sums");
  trace->add_option("--kernel", config.kernel, "Kernel JSON")->required();
  trace->add_option("--ell-max", config.ell_max, "Largest cycle length")->capture_default_str();

  auto* sample = app.add_subcommand("sample", "Draw a W-random digraph");
  sample->add_option("--digraphon,--kernel", config.kernel, "Digraphon or pair JSON")
      ->required();
  sample->add_option("--n", config.n, "Vertex count")->required();

  auto* converge = app.add_subcommand("converge", "Spectral convergence of W-random digraphs");
  converge->add_option("--digraphon,--kernel", config.kernel, "Digraphon JSON")->required();
  converge->add_option("--sizes", config.sizes, "Sample sizes")->delimiter(',')->required();
  converge->add_option("--seeds-per-size", config.seeds_per_size, "Seeds per size")
      ->capture_default_str();
  converge->add_option("--epsilon", config.epsilon, "Multiplicity ball radius")
      ->capture_default_str();

  auto* step = app.add_subcommand("step-converge", "Spectral convergence of a kernel sequence");
  step->add_option("--kernel", config.kernel, "Limit kernel JSON")->required();
  step->add_option("--sequence", config.sequence, "JSON array of kernels");
  step->add_option("--steps", config.steps, "Perturbation steps")->capture_default_str();
  step->add_option("--amplitude", config.amplitude, "Perturbation amplitude")
      ->capture_default_str();
  step->add_option("--epsilon", config.epsilon, "Multiplicity ball radius")
      ->capture_default_str();

  auto* bidirected = app.add_subcommand("section5", "Bidirected example on random regular graphs");
  bidirected->add_option("--n-list", config.sizes, "Regular-graph degrees")
      ->delimiter(',')
      ->required();

  const std::pair<CLI::App*, Command> subs[] = {
      {spectrum, Command::kSpectrum},  {cutnorm, Command::kCutNorm},
      {trace, Command::kTraceCheck},   {sample, Command::kSample},
      {converge, Command::kConverge},  {step, Command::kStepConverge},
      {bidirected, Command::kBidirected},
  };
  for (const auto& [sub, cmd] : subs) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      std::ostringstream help;
      app.exit(e, help, help);
      out << help.str();
      return kExitOk;
    }
    report_error(diag, "invalid-argument", e.what());
    return kExitValidation;
  }

  for (const auto& [sub, cmd] : subs)
    if (sub->parsed()) config.command = cmd;
  config.format = format == "csv" ? Format::kCsv : Format::kJson;
  return run(config, out, diag);
}

}  // namespace digraphon::cli
