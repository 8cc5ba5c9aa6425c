#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "digraphon/digraph.hpp"
#include "digraphon/spectra.hpp"
#include "digraphon/stepkernel.hpp"

namespace digraphon {

// --- Bidirected example objects ----------------------------------------------

/// The two-block pair that is the limit of H1_n: W1 = 1/2 between the two
/// halves, W2 = 0.
BidirectedStepPair bidirected_limit_h1();
/// The limit of H2_n: W1 = 0, W2 = 1/2 between the halves (both directions).
BidirectedStepPair bidirected_limit_h2();
/// W' = W1 + W2 shared by both limits: 1/2 between the halves, 0 inside.
StepKernel bidirected_collapsed_limit();
/// Digraphon stand-in for W': value 1/4 between the halves in each
/// direction (so W(x,y) + W(y,x) <= 1). Its nonzero spectrum is {1/8, -1/8}.
StepDigraphon bidirected_surrogate_digraphon();

// --- Cycle densities ---------------------------------------------------------

/// Sum over nonzero spectral points of m(lambda) lambda^l. The imaginary
/// residue must vanish within 1e-8 (kNumerical otherwise). l >= 2; the
/// identity with t(C_l, W) is only claimed for l >= 3.
double cycle_density_via_spectrum(const StepKernel& w, std::size_t length);

struct TraceCheckReport {
  std::size_t ell = 0;
  double lhs = 0.0;  // t(C_l, W) by block-map enumeration
  double rhs = 0.0;  // spectral power sum
  double abs_error = 0.0;
};

/// Both sides of the cycle-density identity for l = 3..max_length.
std::vector<TraceCheckReport> verify_trace_formula(const StepKernel& w,
                                                   std::size_t max_length);

// --- Convergence experiments -------------------------------------------------

struct ConvergenceRow {
  std::size_t n = 0;         // sample size (or sequence index for step sequences)
  std::uint64_t seed = 0;    // per-cell seed; 0 for deterministic sequences
  Spectrum observed;
  double hausdorff = 0.0;
  std::vector<MultiplicityLedger> ledgers;
  std::optional<std::pair<double, double>> nu_gaps;
  std::optional<double> cut_metric;
  bool singular_bound_ok = true;
};

struct SizeSummary {
  std::size_t n = 0;
  double median_hausdorff = 0.0;
  /// Fraction of rows at this size whose ledgers all matched.
  double matched_fraction = 0.0;
};

struct ConvergenceReport {
  Spectrum limit_spectrum;
  double epsilon = 0.0;
  std::uint64_t master_seed = 0;
  std::vector<ConvergenceRow> rows;      // sorted by n, then seed index
  std::vector<SizeSummary> summaries;    // one per distinct n
};

/// Points the observed normalized spectrum of an n-vertex sample is compared
/// against: the nonzero limit points, plus 0 once n exceeds their total
/// multiplicity (or when there are no nonzero points at all).
std::vector<Complex> limit_point_set(const Spectrum& limit, std::size_t sample_size);

double median(std::vector<double> values);

/// Samples W-random digraphs for every (size, replicate) cell, with cell seeds
/// derive_seed(seed, cell index), and compares normalized spectra against
/// step_spectrum(W). Cells run in parallel; the report is deterministic.
ConvergenceReport convergence_experiment(const StepDigraphon& w,
                                         const std::vector<std::size_t>& sizes,
                                         std::size_t seeds_per_size, double epsilon,
                                         std::uint64_t seed);

/// Deterministic variant for a sequence of step kernels: spectra, ledgers,
/// cut metric and nu-gaps of each element against the limit W.
ConvergenceReport step_sequence_convergence(const std::vector<StepKernel>& sequence,
                                            const StepKernel& w, double epsilon);

/// W_n = W + amplitude * 2^-n * N for n = 1..steps, with one fixed noise
/// matrix N drawn uniformly from [-1, 1]^(k x k) using `seed`.
std::vector<StepKernel> perturbation_sequence(const StepKernel& w, std::size_t steps,
                                              double amplitude, std::uint64_t seed);

// --- Bidirected finite example -------------------------------------------------

struct BidirectedExampleRow {
  std::size_t n = 0;             // A_n is n-regular on 2n vertices
  std::uint64_t seed = 0;
  double second_eigenvalue = 0;  // max |lambda_i| over i >= 2 for A_n
  double h1_spectrum_error = 0;  // matched distance Sp(H1) vs {+-lambda_i}
  double h2_spectrum_error = 0;  // matched distance Sp(H2) vs {+-n} u {+-i lambda}
  double t_h1[3] = {0, 0, 0};    // t(C_l, H1_n) for l = 2, 3, 4
  double t_h2[3] = {0, 0, 0};
  double h1_hausdorff = 0;       // normalized Sp(H1_n) vs {1/4, -1/4, 0}
  double h2_hausdorff = 0;
  bool singular_bound_ok = true;
};

struct BidirectedExampleReport {
  std::uint64_t master_seed = 0;
  std::vector<BidirectedExampleRow> rows;
};

/// Builds A_n, H1_n, H2_n for each n (n >= 2) and records the spectral
/// identities, cycle densities and distances to the limit spectrum.
BidirectedExampleReport bidirected_example(const std::vector<std::size_t>& n_list,
                                           std::uint64_t seed);

}  // namespace digraphon
