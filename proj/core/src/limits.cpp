#include "digraphon/limits.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "digraphon/error.hpp"
#include "digraphon/parallel.hpp"
#include "digraphon/rng.hpp"

namespace digraphon {

namespace {

RealMatrix off_diagonal_halves(double value) {
  RealMatrix m(2, 2, 0.0);
  m(0, 1) = m(1, 0) = value;
  return m;
}

const std::vector<double> kHalves{0.5, 0.5};

// Sum of m |lambda|^2 over a normalized spectrum of an n-vertex digraph,
// compared against n^2 after undoing the normalization.
bool singular_bound_from_normalized(const Spectrum& normalized) {
  double sum = 0.0;
  for (const auto& p : normalized.points())
    sum += static_cast<double>(p.mult) * std::norm(p.value);
  return sum <= 1.0;
}

}  // namespace

BidirectedStepPair bidirected_limit_h1() {
  return BidirectedStepPair(kHalves, off_diagonal_halves(0.5), RealMatrix(2, 2, 0.0));
}

BidirectedStepPair bidirected_limit_h2() {
  return BidirectedStepPair(kHalves, RealMatrix(2, 2, 0.0), off_diagonal_halves(0.5));
}

StepKernel bidirected_collapsed_limit() { return collapse(bidirected_limit_h1()); }

StepDigraphon bidirected_surrogate_digraphon() {
  return StepDigraphon(kHalves, off_diagonal_halves(0.25));
}

// --- cycle densities -----------------------------------------------------------

double cycle_density_via_spectrum(const StepKernel& w, std::size_t length) {
  require(length >= 2, "cycle_density_via_spectrum needs length >= 2");
  const Spectrum sp = step_spectrum(w);
  Complex sum{0.0, 0.0};
  double scale = 0.0;
  for (const auto& p : sp.points()) {
    const Complex term = static_cast<double>(p.mult) * std::pow(p.value, static_cast<int>(length));
    sum += term;
    scale += std::abs(term);
  }
  if (std::abs(sum.imag()) > 1e-8 * std::max(1.0, scale))
    throw Error(ErrorKind::kNumerical,
                "cycle_density_via_spectrum: imaginary residue does not vanish",
                std::abs(sum.imag()));
  return sum.real();
}

std::vector<TraceCheckReport> verify_trace_formula(const StepKernel& w,
                                                   std::size_t max_length) {
  require(max_length >= 3, "verify_trace_formula needs max length >= 3");
  std::vector<TraceCheckReport> out;
  for (std::size_t ell = 3; ell <= max_length; ++ell) {
    TraceCheckReport r;
    r.ell = ell;
    r.lhs = hom_density_step(cycle_digraph(ell), w);
    r.rhs = cycle_density_via_spectrum(w, ell);
    r.abs_error = std::abs(r.lhs - r.rhs);
    out.push_back(r);
  }
  return out;
}

// --- convergence ---------------------------------------------------------------

std::vector<Complex> limit_point_set(const Spectrum& limit, std::size_t sample_size) {
  std::vector<Complex> out;
  for (const auto& p : limit.points())
    if (p.value != Complex{}) out.push_back(p.value);
  const bool zero_is_eigenvalue = limit.multiplicity_of(Complex{}, 0.0) > 0;
  if (out.empty() || zero_is_eigenvalue ||
      (limit.includes_zero_spectral_point() && sample_size > limit.nonzero_multiplicity()))
    out.emplace_back(0.0, 0.0);
  return out;
}

double median(std::vector<double> values) {
  require(!values.empty(), "median of an empty list");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

namespace {

std::vector<Complex> nonzero_targets(const Spectrum& limit) {
  std::vector<Complex> out;
  for (const auto& p : limit.points())
    if (p.value != Complex{}) out.push_back(p.value);
  return out;
}

void summarize(ConvergenceReport& report) {
  report.summaries.clear();
  std::size_t start = 0;
  while (start < report.rows.size()) {
    std::size_t end = start;
    std::vector<double> distances;
    std::size_t matched = 0;
    while (end < report.rows.size() && report.rows[end].n == report.rows[start].n) {
      const auto& row = report.rows[end];
      distances.push_back(row.hausdorff);
      matched += std::all_of(row.ledgers.begin(), row.ledgers.end(),
                             [](const MultiplicityLedger& l) { return l.matched(); });
      ++end;
    }
    report.summaries.push_back(
        {report.rows[start].n, median(distances),
         static_cast<double>(matched) / static_cast<double>(end - start)});
    start = end;
  }
}

}  // namespace

ConvergenceReport convergence_experiment(const StepDigraphon& w,
                                         const std::vector<std::size_t>& sizes,
                                         std::size_t seeds_per_size, double epsilon,
                                         std::uint64_t seed) {
  require(!sizes.empty(), "convergence_experiment needs at least one size");
  require(seeds_per_size >= 1, "convergence_experiment needs seeds_per_size >= 1");
  require(epsilon > 0.0, "convergence_experiment needs epsilon > 0");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    require(sizes[i] >= 1, "sample sizes must be positive");
    require(i == 0 || sizes[i] > sizes[i - 1], "sample sizes must be strictly increasing");
  }

  ConvergenceReport report;
  report.limit_spectrum = step_spectrum(w);
  report.epsilon = epsilon;
  report.master_seed = seed;
  const auto targets = nonzero_targets(report.limit_spectrum);
  // Validates isolation once, before any sampling.
  for (const Complex& t : targets)
    multiplicity_match(report.limit_spectrum, report.limit_spectrum, t, epsilon);

  const std::size_t cells = sizes.size() * seeds_per_size;
  report.rows.resize(cells);
  parallel_for(cells, [&](std::size_t cell) {
    ConvergenceRow& row = report.rows[cell];
    row.n = sizes[cell / seeds_per_size];
    row.seed = derive_seed(seed, cell);
    const Digraph g = sample_w_random(w, row.n, row.seed);
    row.observed = normalized_spectrum(g);
    const auto observed_points = row.observed.point_set();
    const auto limit_points = limit_point_set(report.limit_spectrum, row.n);
    row.hausdorff = hausdorff_distance(observed_points, limit_points);
    for (const Complex& t : targets)
      row.ledgers.push_back(multiplicity_match(report.limit_spectrum, row.observed, t, epsilon));
    row.singular_bound_ok = singular_bound_from_normalized(row.observed);
  });
  summarize(report);
  return report;
}

ConvergenceReport step_sequence_convergence(const std::vector<StepKernel>& sequence,
                                            const StepKernel& w, double epsilon) {
  require(epsilon > 0.0, "step_sequence_convergence needs epsilon > 0");
  ConvergenceReport report;
  report.limit_spectrum = step_spectrum(w);
  report.epsilon = epsilon;
  const auto targets = nonzero_targets(report.limit_spectrum);
  for (const Complex& t : targets)
    multiplicity_match(report.limit_spectrum, report.limit_spectrum, t, epsilon);
  const auto limit_points = report.limit_spectrum.point_set();

  for (std::size_t i = 0; i < sequence.size(); ++i) {
    ConvergenceRow row;
    row.n = i + 1;
    const auto [wn, wr] = common_refinement(sequence[i], w);
    row.observed = step_spectrum(sequence[i]);
    row.hausdorff = hausdorff_distance(row.observed.point_set(), limit_points);
    for (const Complex& t : targets)
      row.ledgers.push_back(multiplicity_match(report.limit_spectrum, row.observed, t, epsilon));
    row.nu_gaps = nu_convergence_gaps(wn, wr);
    row.cut_metric = cut_metric(wn, wr);
    report.rows.push_back(std::move(row));
  }
  summarize(report);
  return report;
}

std::vector<StepKernel> perturbation_sequence(const StepKernel& w, std::size_t steps,
                                              double amplitude, std::uint64_t seed) {
  require(amplitude >= 0.0, "perturbation amplitude must be non-negative");
  Rng rng(seed);
  RealMatrix noise(w.k(), w.k());
  for (double& x : noise.data()) x = 2.0 * rng.uniform() - 1.0;
  std::vector<StepKernel> out;
  for (std::size_t n = 1; n <= steps; ++n) {
    const double scale = amplitude * std::ldexp(1.0, -static_cast<int>(n));
    RealMatrix values = w.values();
    for (std::size_t i = 0; i < w.k(); ++i)
      for (std::size_t j = 0; j < w.k(); ++j) values(i, j) += scale * noise(i, j);
    out.emplace_back(w.measures(), std::move(values), w.bound() + scale);
  }
  return out;
}

// --- bidirected finite example ---------------------------------------------------

BidirectedExampleReport bidirected_example(const std::vector<std::size_t>& n_list,
                                           std::uint64_t seed) {
  BidirectedExampleReport report;
  report.master_seed = seed;
  report.rows.resize(n_list.size());
  for (std::size_t n : n_list) require(n >= 2, "bidirected_example needs n >= 2");

  parallel_for(n_list.size(), [&](std::size_t idx) {
    BidirectedExampleRow& row = report.rows[idx];
    const std::size_t n = n_list[idx];
    row.n = n;
    row.seed = derive_seed(seed, idx);
    const UndirectedRegularGraph a = random_regular_graph(2 * n, n, row.seed);
    const Digraph h1 = build_h1(a);
    const Digraph h2 = build_h2(a);

    std::vector<double> lambda;
    for (const Complex& z : eigenvalues(a.adjacency_real())) lambda.push_back(z.real());
    std::sort(lambda.begin(), lambda.end());
    // The top eigenvalue n belongs to the all-ones vector; the rest live on
    // its orthogonal complement.
    const double degree = static_cast<double>(n);
    const auto top = std::min_element(lambda.begin(), lambda.end(), [&](double x, double y) {
      return std::abs(x - degree) < std::abs(y - degree);
    });
    std::vector<double> rest(lambda.begin(), lambda.end());
    rest.erase(rest.begin() + (top - lambda.begin()));
    for (double l : rest) row.second_eigenvalue = std::max(row.second_eigenvalue, std::abs(l));

    std::vector<Complex> expected_h1;
    for (double l : lambda) {
      expected_h1.emplace_back(l, 0.0);
      expected_h1.emplace_back(-l, 0.0);
    }
    std::vector<Complex> expected_h2{{degree, 0.0}, {-degree, 0.0}};
    for (double l : rest) {
      expected_h2.emplace_back(0.0, l);
      expected_h2.emplace_back(0.0, -l);
    }
    const Spectrum sp1 = digraph_spectrum(h1);
    const Spectrum sp2 = digraph_spectrum(h2);
    row.h1_spectrum_error = matched_distance(sp1.flattened(), expected_h1);
    row.h2_spectrum_error = matched_distance(sp2.flattened(), expected_h2);

    const double size = static_cast<double>(h1.size());
    for (std::size_t ell = 2; ell <= 4; ++ell) {
      const double denom = std::pow(size, static_cast<double>(ell));
      row.t_h1[ell - 2] = static_cast<double>(trace_power(h1, ell)) / denom;
      row.t_h2[ell - 2] = static_cast<double>(trace_power(h2, ell)) / denom;
    }

    const std::vector<Complex> limit{{0.25, 0.0}, {-0.25, 0.0}, {0.0, 0.0}};
    const Spectrum norm1 = sp1.scaled(1.0 / size);
    const Spectrum norm2 = sp2.scaled(1.0 / size);
    row.h1_hausdorff = hausdorff_distance(norm1.point_set(), limit);
    row.h2_hausdorff = hausdorff_distance(norm2.point_set(), limit);
    row.singular_bound_ok =
        singular_bound_from_normalized(norm1) && singular_bound_from_normalized(norm2);
  });
  return report;
}

}  // namespace digraphon
