#include "digraphon/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "digraphon/error.hpp"

namespace digraphon {

namespace {

bool value_less(const SpectralPoint& a, const SpectralPoint& b) {
  if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
  return a.value.imag() < b.value.imag();
}

std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

// --- Spectrum --------------------------------------------------------------------

Spectrum::Spectrum(std::vector<SpectralPoint> points, bool includes_zero_spectral_point)
    : points_(std::move(points)), includes_zero_(includes_zero_spectral_point) {
  for (const auto& p : points_)
    require(p.mult >= 1, "spectral point multiplicities must be positive");
  std::sort(points_.begin(), points_.end(), value_less);
}

std::size_t Spectrum::total_multiplicity() const {
  std::size_t total = 0;
  for (const auto& p : points_) total += p.mult;
  return total;
}

std::size_t Spectrum::nonzero_multiplicity() const {
  std::size_t total = 0;
  for (const auto& p : points_)
    if (p.value != Complex{}) total += p.mult;
  return total;
}

std::vector<Complex> Spectrum::flattened() const {
  std::vector<Complex> out;
  for (const auto& p : points_) out.insert(out.end(), p.mult, p.value);
  return out;
}

std::vector<Complex> Spectrum::point_set() const {
  std::vector<Complex> out;
  bool has_zero = false;
  for (const auto& p : points_) {
    out.push_back(p.value);
    has_zero = has_zero || p.value == Complex{};
  }
  if (includes_zero_ && !has_zero) out.emplace_back(0.0, 0.0);
  return out;
}

Spectrum Spectrum::scaled(double factor) const {
  std::vector<SpectralPoint> pts = points_;
  for (auto& p : pts) p.value *= factor;
  return Spectrum(std::move(pts), includes_zero_);
}

std::size_t Spectrum::multiplicity_of(Complex value, double tol) const {
  for (const auto& p : points_)
    if (std::abs(p.value - value) <= tol) return p.mult;
  return 0;
}

// --- clustering ----------------------------------------------------------------------

double default_cluster_tolerance(std::size_t n, double norm_inf) {
  return std::max(1e-7, 1e-8 * static_cast<double>(n) * norm_inf);
}

Spectrum cluster_multiplicities(std::span<const Complex> points, double tol) {
  require(tol > 0.0, "clustering tolerance must be positive");
  const std::size_t n = points.size();
  DisjointSets sets(n);

  // Single linkage over a real-part sweep: only neighbours within tol in the
  // real coordinate can be linked.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return points[a].real() < points[b].real();
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex a = points[order[i]];
      const Complex b = points[order[j]];
      if (b.real() - a.real() > tol) break;
      if (std::abs(a - b) <= tol) sets.unite(order[i], order[j]);
    }
  }

  while (true) {
    std::vector<Complex> sum(n);
    std::vector<std::size_t> size(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r = sets.find(i);
      sum[r] += points[i];
      ++size[r];
    }
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < n; ++i)
      if (size[i] > 0) roots.push_back(i);

    bool merged = false;
    for (std::size_t a = 0; a < roots.size() && !merged; ++a) {
      for (std::size_t b = a + 1; b < roots.size() && !merged; ++b) {
        const Complex ca = sum[roots[a]] / static_cast<double>(size[roots[a]]);
        const Complex cb = sum[roots[b]] / static_cast<double>(size[roots[b]]);
        if (std::abs(ca - cb) <= tol) merged = sets.unite(roots[a], roots[b]);
      }
    }
    if (merged) continue;

    std::vector<SpectralPoint> out;
    out.reserve(roots.size());
    for (std::size_t r : roots) {
      Complex c = sum[r] / static_cast<double>(size[r]);
      if (std::abs(c) <= tol) c = 0.0;
      // Self-conjugate clusters of real input: cancel rounding residue.
      if (std::abs(c.imag()) <= 1e-14 * std::max(1.0, std::abs(c))) c.imag(0.0);
      out.push_back({c, size[r]});
    }
    return Spectrum(std::move(out), false);
  }
}

Spectrum digraph_spectrum(const Digraph& g, std::optional<double> tol) {
  const RealMatrix a = g.adjacency_real();
  const auto values = eigenvalues(a);
  const double radius = tol.value_or(default_cluster_tolerance(g.size(), norm_inf(a)));
  Spectrum clustered = cluster_multiplicities(values, radius);
  const bool zero = clustered.multiplicity_of(Complex{}, 0.0) > 0;
  return Spectrum(clustered.points(), zero);
}

Spectrum normalized_spectrum(const Digraph& g, std::optional<double> tol) {
  return digraph_spectrum(g, tol).scaled(1.0 / static_cast<double>(g.size()));
}

Spectrum step_spectrum(const StepKernel& w, std::optional<double> tol) {
  const RealMatrix b = w.transfer_matrix();
  const auto values = eigenvalues(b);
  const double radius = tol.value_or(default_cluster_tolerance(w.k(), norm_inf(b)));
  const Spectrum clustered = cluster_multiplicities(values, radius);
  std::vector<SpectralPoint> nonzero;
  for (const auto& p : clustered.points())
    if (p.value != Complex{}) nonzero.push_back(p);
  return Spectrum(std::move(nonzero), true);
}

// --- distances ---------------------------------------------------------------------

double hausdorff_distance(std::span<const Complex> x, std::span<const Complex> y) {
  require(!x.empty() && !y.empty(), "hausdorff_distance needs nonempty sets");
  auto directed = [](std::span<const Complex> from, std::span<const Complex> to) {
    double worst = 0.0;
    for (const Complex& p : from) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const Complex& q : to) nearest = std::min(nearest, std::abs(p - q));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(x, y), directed(y, x));
}

double matched_distance(std::span<const Complex> x, std::span<const Complex> y) {
  require(x.size() == y.size(), "matched_distance needs multisets of equal size");
  const std::size_t n = x.size();
  if (n == 0) return 0.0;
  // Hungarian algorithm with potentials, 1-based internally.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), way_min(n + 1);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  auto cost = [&](std::size_t i, std::size_t j) { return std::abs(x[i - 1] - y[j - 1]); };
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::fill(way_min.begin(), way_min.end(), inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0, j) - u[i0] - v[j];
        if (cur < way_min[j]) {
          way_min[j] = cur;
          way[j] = j0;
        }
        if (way_min[j] < delta) {
          delta = way_min[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          way_min[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double worst = 0.0;
  for (std::size_t j = 1; j <= n; ++j) worst = std::max(worst, cost(match[j], j));
  return worst;
}

// --- multiplicities ---------------------------------------------------------------

MultiplicityLedger multiplicity_match(const Spectrum& limit, const Spectrum& observed,
                                      Complex lambda, double epsilon) {
  require(epsilon > 0.0, "multiplicity_match needs epsilon > 0");
  require(lambda != Complex{}, "multiplicity_match needs a nonzero limit eigenvalue");
  const double locate = 1e-9 * std::max(1.0, std::abs(lambda));
  const SpectralPoint* target = nullptr;
  for (const auto& p : limit.points())
    if (std::abs(p.value - lambda) <= locate) target = &p;
  require(target != nullptr, "multiplicity_match: " + format_complex(lambda) +
                                 " is not a point of the limit spectrum");

  for (const Complex& other : limit.point_set()) {
    if (std::abs(other - target->value) <= locate) continue;
    if (std::abs(other - target->value) < 2.0 * epsilon)
      fail(ErrorKind::kIsolation, "multiplicity_match: limit point " + format_complex(other) +
                                      " lies within 2*epsilon of " +
                                      format_complex(target->value));
  }
  if (epsilon >= std::abs(target->value))
    fail(ErrorKind::kIsolation, "multiplicity_match: epsilon must be below |lambda|");

  MultiplicityLedger ledger{target->value, epsilon, 0, target->mult};
  for (const auto& p : observed.points())
    if (std::abs(p.value - target->value) < epsilon) ledger.matched_mass += p.mult;
  return ledger;
}

bool singular_moment_bound(const Digraph& g) {
  const Spectrum sp = digraph_spectrum(g);
  double sum = 0.0;
  for (const auto& p : sp.points()) sum += static_cast<double>(p.mult) * std::norm(p.value);
  const double n = static_cast<double>(g.size());
  return sum <= n * n;
}

}  // namespace digraphon
