#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "digraphon/digraph.hpp"
#include "digraphon/eigen.hpp"
#include "digraphon/stepkernel.hpp"

namespace digraphon {

struct SpectralPoint {
  Complex value;
  std::size_t mult = 1;
};

/// Multiset of eigenvalues with algebraic multiplicities.
///
/// `includes_zero_spectral_point` records whether 0 belongs to the spectrum
/// as a set. For a step kernel 0 is always a spectral point of the integral
/// operator even when it is not an eigenvalue; for a finite digraph it is a
/// spectral point only if it is an eigenvalue.
class Spectrum {
 public:
  Spectrum() = default;
  /// Points are sorted by (real, imag); multiplicities must be >= 1.
  Spectrum(std::vector<SpectralPoint> points, bool includes_zero_spectral_point);

  const std::vector<SpectralPoint>& points() const noexcept { return points_; }
  bool includes_zero_spectral_point() const noexcept { return includes_zero_; }

  std::size_t total_multiplicity() const;
  /// Sum of multiplicities over points with value != 0.
  std::size_t nonzero_multiplicity() const;
  /// Values repeated by multiplicity.
  std::vector<Complex> flattened() const;
  /// Distinct values; 0 is appended when it is a spectral point but not
  /// listed among the eigenvalues.
  std::vector<Complex> point_set() const;
  /// Same spectrum with every value multiplied by `factor`.
  Spectrum scaled(double factor) const;
  /// Multiplicity of the point equal to `value` (0 if absent).
  std::size_t multiplicity_of(Complex value, double tol) const;

 private:
  std::vector<SpectralPoint> points_;
  bool includes_zero_ = false;
};

struct MultiplicityLedger {
  Complex target;
  double epsilon = 0.0;
  std::size_t matched_mass = 0;  // sum of observed mults inside B_eps(target)
  std::size_t expected = 0;      // multiplicity of target in the limit

  bool matched() const noexcept { return matched_mass == expected; }
};

/// max(1e-7, 1e-8 * n * ||M||_inf).
double default_cluster_tolerance(std::size_t n, double norm_inf);

/// Single-linkage clustering at radius tol; each cluster becomes
/// (centroid, size). Clusters whose centroids end up within tol are merged,
/// so reported centroids are pairwise more than tol apart. Centroids within
/// tol of 0 are snapped to 0.
Spectrum cluster_multiplicities(std::span<const Complex> points, double tol);

/// Sp(G) with multiplicities; the zero flag is set iff 0 is an eigenvalue.
Spectrum digraph_spectrum(const Digraph& g, std::optional<double> tol = std::nullopt);

/// Sp(G) / |G|.
Spectrum normalized_spectrum(const Digraph& g, std::optional<double> tol = std::nullopt);

/// Nonzero spectrum of T_W with algebraic multiplicities (eigenvalues of
/// values[i][j] * measures[j]); the zero spectral point is always flagged.
Spectrum step_spectrum(const StepKernel& w, std::optional<double> tol = std::nullopt);

/// Hausdorff distance between finite nonempty point sets in the plane.
double hausdorff_distance(std::span<const Complex> x, std::span<const Complex> y);

/// Largest pairing distance under a minimum-total-distance perfect matching
/// of two equally sized multisets (Hungarian algorithm).
double matched_distance(std::span<const Complex> x, std::span<const Complex> y);

/// Counts observed multiplicity inside the open ball B_eps(lambda). lambda
/// must be a nonzero point of `limit`, eps < |lambda|, and B_{2 eps}(lambda)
/// must contain no other point of `limit` (kIsolation otherwise).
MultiplicityLedger multiplicity_match(const Spectrum& limit, const Spectrum& observed,
                                      Complex lambda, double epsilon);

/// Sum over Sp(G) of m(lambda) |lambda|^2 <= |G|^2.
bool singular_moment_bound(const Digraph& g);

}  // namespace digraphon
