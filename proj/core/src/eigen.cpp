#include "digraphon/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "digraphon/error.hpp"

namespace digraphon {

namespace {

// Diagonal similarity by powers of two so that row and column norms are
// comparable; improves the accuracy of the QR iteration on badly scaled input.
void balance(RealMatrix& a) {
  constexpr double kRadix = 2.0;
  constexpr double kRadixSq = kRadix * kRadix;
  const std::size_t n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / kRadix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= kRadix;
        c *= kRadixSq;
      }
      g = r * kRadix;
      while (c > g) {
        f /= kRadix;
        c /= kRadixSq;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        const double inv = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= inv;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

// Householder reduction to upper Hessenberg form (similarity transform).
void reduce_to_hessenberg(RealMatrix& a) {
  const std::size_t n = a.rows();
  if (n < 3) return;
  std::vector<double> u(n, 0.0);
  for (std::size_t m = 1; m + 1 < n; ++m) {
    double scale = 0.0;
    for (std::size_t i = m; i < n; ++i) scale += std::abs(a(i, m - 1));
    if (scale == 0.0) continue;
    double h = 0.0;
    for (std::size_t i = m; i < n; ++i) {
      u[i] = a(i, m - 1) / scale;
      h += u[i] * u[i];
    }
    const double g = u[m] > 0 ? -std::sqrt(h) : std::sqrt(h);
    h -= u[m] * g;
    u[m] -= g;
    // (I - u u^T / h) A
    for (std::size_t j = m; j < n; ++j) {
      double f = 0.0;
      for (std::size_t i = m; i < n; ++i) f += u[i] * a(i, j);
      f /= h;
      for (std::size_t i = m; i < n; ++i) a(i, j) -= f * u[i];
    }
    // A (I - u u^T / h)
    for (std::size_t i = 0; i < n; ++i) {
      double f = 0.0;
      for (std::size_t j = m; j < n; ++j) f += u[j] * a(i, j);
      f /= h;
      for (std::size_t j = m; j < n; ++j) a(i, j) -= f * u[j];
    }
    a(m, m - 1) = scale * g;
    for (std::size_t i = m + 1; i < n; ++i) a(i, m - 1) = 0.0;
  }
}

// Francis double-shift QR on an upper Hessenberg matrix, eigenvalues only.
// Indices in the body are 1-based (H(i, j) maps onto the 0-based storage).
std::vector<Complex> hessenberg_qr(RealMatrix& a) {
  const int n = static_cast<int>(a.rows());
  auto H = [&a](int i, int j) -> double& { return a(i - 1, j - 1); };
  std::vector<double> wr(n + 1, 0.0);
  std::vector<double> wi(n + 1, 0.0);

  double anorm = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = std::max(i - 1, 1); j <= n; ++j) anorm += std::abs(H(i, j));

  const long budget = 50L * n;
  long sweeps = 0;
  int nn = n;
  double t = 0.0;
  while (nn >= 1) {
    int its = 0;
    int l;
    do {
      for (l = nn; l >= 2; --l) {
        double s = std::abs(H(l - 1, l - 1)) + std::abs(H(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(H(l, l - 1)) + s == s) {
          H(l, l - 1) = 0.0;
          break;
        }
      }
      double x = H(nn, nn);
      if (l == nn) {
        wr[nn] = x + t;
        wi[nn] = 0.0;
        --nn;
      } else {
        double y = H(nn - 1, nn - 1);
        double w = H(nn, nn - 1) * H(nn - 1, nn);
        if (l == nn - 1) {
          // Trailing 2x2 block in closed form.
          const double p = 0.5 * (y - x);
          const double q = p * p + w;
          double z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + (p >= 0 ? z : -z);
            wr[nn - 1] = wr[nn] = x + z;
            if (z != 0.0) wr[nn] = x - w / z;
            wi[nn - 1] = wi[nn] = 0.0;
          } else {
            wr[nn - 1] = wr[nn] = x + p;
            wi[nn] = z;
            wi[nn - 1] = -z;
          }
          nn -= 2;
        } else {
          if (++sweeps > budget) {
            throw Error(ErrorKind::kNumerical,
                        "QR iteration did not converge within " +
                            std::to_string(budget) + " sweeps",
                        std::abs(H(nn, nn - 1)));
          }
          if (its > 0 && its % 10 == 0) {
            // Exceptional shift.
            t += x;
            for (int i = 1; i <= nn; ++i) H(i, i) -= x;
            const double s = std::abs(H(nn, nn - 1)) + std::abs(H(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          int m;
          double p = 0.0, q = 0.0, r = 0.0, z;
          for (m = nn - 2; m >= l; --m) {
            z = H(m, m);
            r = x - z;
            double s = y - z;
            p = (r * s - w) / H(m + 1, m) + H(m, m + 1);
            q = H(m + 1, m + 1) - z - r - s;
            r = H(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const double u = std::abs(H(m, m - 1)) * (std::abs(q) + std::abs(r));
            const double v =
                std::abs(p) * (std::abs(H(m - 1, m - 1)) + std::abs(z) + std::abs(H(m + 1, m + 1)));
            if (u + v == v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            H(i, i - 2) = 0.0;
            if (i != m + 2) H(i, i - 3) = 0.0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = H(k, k - 1);
              q = H(k + 1, k - 1);
              r = 0.0;
              if (k != nn - 1) r = H(k + 2, k - 1);
              x = std::abs(p) + std::abs(q) + std::abs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            const double norm = std::sqrt(p * p + q * q + r * r);
            const double s = p >= 0 ? norm : -norm;
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) H(k, k - 1) = -H(k, k - 1);
            } else {
              H(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            z = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {
              p = H(k, j) + q * H(k + 1, j);
              if (k != nn - 1) {
                p += r * H(k + 2, j);
                H(k + 2, j) -= p * z;
              }
              H(k + 1, j) -= p * y;
              H(k, j) -= p * x;
            }
            const int mmin = nn < k + 3 ? nn : k + 3;
            for (int i = l; i <= mmin; ++i) {
              p = x * H(i, k) + y * H(i, k + 1);
              if (k != nn - 1) {
                p += z * H(i, k + 2);
                H(i, k + 2) -= p * r;
              }
              H(i, k + 1) -= p * q;
              H(i, k) -= p;
            }
          }
        }
      }
    } while (l < nn - 1);
  }

  std::vector<Complex> out;
  out.reserve(n);
  for (int i = 1; i <= n; ++i) out.emplace_back(wr[i], wi[i]);
  return out;
}

}  // namespace

std::vector<Complex> eigenvalues(const RealMatrix& m) {
  require(m.square() && m.rows() >= 1, "eigenvalues needs a nonempty square matrix");
  for (double v : m.data())
    require(std::isfinite(v), "eigenvalues needs finite entries");
  RealMatrix a = m;
  balance(a);
  reduce_to_hessenberg(a);
  return hessenberg_qr(a);
}

std::vector<double> symmetric_eigenvalues(const RealMatrix& m) {
  require(m.square() && m.rows() >= 1, "symmetric_eigenvalues needs a square matrix");
  const std::size_t n = m.rows();
  RealMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = m(i, j);

  double total = 0.0;
  for (double v : a.data()) total += v * v;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off <= 1e-30 * total || off == 0.0) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t r = 0; r < n; ++r) {
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = c * arp - s * arq;
          a(r, q) = s * arp + c * arq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double apr = a(p, r);
          const double aqr = a(q, r);
          a(p, r) = c * apr - s * aqr;
          a(q, r) = s * apr + c * aqr;
        }
      }
    }
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a(i, i);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace digraphon
