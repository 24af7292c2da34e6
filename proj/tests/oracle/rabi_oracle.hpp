#pragma once

// Independent reference for the quantum Rabi model, used only by tests.
//
// Parity splits the Rabi Hamiltonian into two real symmetric tridiagonal
// chains indexed by the photon number n. In the even chain the atom is |g>
// for even n and |e> for odd n; the odd chain is the mirror image. Diagonal
// n*w0 -+ wa/2, off-diagonal g*sqrt(n+1). Eigenvalues come from Sturm-count
// bisection and eigenvectors from inverse iteration, so nothing here shares
// code with the library's dense complex eigensolver.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace oracle {

struct Chain {
  std::vector<double> diag;
  std::vector<double> off;  // off[n] couples n and n+1
  int parity = 1;
};

inline bool atom_excited(int parity, std::size_t n) {
  const bool odd_n = (n % 2) == 1;
  return parity > 0 ? odd_n : !odd_n;
}

inline Chain rabi_chain(double w0, double wa, double g, std::size_t n_fock, int parity) {
  Chain c;
  c.parity = parity;
  c.diag.resize(n_fock);
  c.off.resize(n_fock - 1);
  for (std::size_t n = 0; n < n_fock; ++n) {
    c.diag[n] = static_cast<double>(n) * w0 + (atom_excited(parity, n) ? 0.5 : -0.5) * wa;
    if (n + 1 < n_fock) c.off[n] = g * std::sqrt(static_cast<double>(n + 1));
  }
  return c;
}

// Number of eigenvalues strictly below x.
inline std::size_t sturm_count(const Chain& c, double x) {
  const double tiny = std::numeric_limits<double>::min() * 1e4;
  std::size_t count = 0;
  double q = c.diag[0] - x;
  for (std::size_t i = 0;; ++i) {
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
    if (i + 1 == c.diag.size()) break;
    q = (c.diag[i + 1] - x) - c.off[i] * c.off[i] / q;
  }
  return count;
}

inline double chain_eigenvalue(const Chain& c, std::size_t k) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < c.diag.size(); ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(c.off[i - 1]);
    if (i + 1 < c.diag.size()) r += std::abs(c.off[i]);
    lo = std::min(lo, c.diag[i] - r);
    hi = std::max(hi, c.diag[i] + r);
  }
  lo -= 1.0;
  hi += 1.0;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(c, mid) > k) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

// Solves (T - shift) y = b with partial pivoting on the tridiagonal band.
inline std::vector<double> shifted_solve(const Chain& c, double shift, std::vector<double> b) {
  const std::size_t n = c.diag.size();
  std::vector<double> d(n), du(n, 0.0), du2(n, 0.0), dl(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = c.diag[i] - shift;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    du[i] = c.off[i];
    dl[i] = c.off[i];
  }
  // Row i holds d[i], du[i], du2[i] in columns i, i+1, i+2 after elimination.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = 1e-300;
      const double f = dl[i] / d[i];
      d[i + 1] -= f * du[i];
      b[i + 1] -= f * b[i];
      dl[i] = 0.0;
    } else {
      const double f = d[i] / dl[i];
      // Swap rows i and i+1.
      const double di1 = d[i + 1];
      const double du1 = i + 2 < n ? du[i + 1] : 0.0;
      d[i] = dl[i];
      const double old_du = du[i];
      du[i] = di1;
      du2[i] = du1;
      d[i + 1] = old_du - f * di1;
      if (i + 2 < n) du[i + 1] = -f * du1;
      std::swap(b[i], b[i + 1]);
      b[i + 1] -= f * b[i];
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = 1e-300;
  std::vector<double> y(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    if (ii + 1 < n) s -= du[ii] * y[ii + 1];
    if (ii + 2 < n) s -= du2[ii] * y[ii + 2];
    y[ii] = s / d[ii];
  }
  return y;
}

inline std::vector<double> chain_eigenvector(const Chain& c, double lambda) {
  const std::size_t n = c.diag.size();
  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  for (int it = 0; it < 4; ++it) {
    v = shifted_solve(c, lambda, v);
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
  }
  std::size_t big = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(v[i]) > std::abs(v[big])) big = i;
  }
  if (v[big] < 0.0) {
    for (double& x : v) x = -x;
  }
  return v;
}

struct Level {
  double energy = 0.0;
  int parity = 1;
  std::vector<double> amps;  // indexed by photon number along the chain
};

// Lowest `count` levels of the full model, ascending.
inline std::vector<Level> rabi_levels(double w0, double wa, double g, std::size_t n_fock, std::size_t count) {
  std::vector<Level> all;
  for (int parity : {1, -1}) {
    const Chain c = rabi_chain(w0, wa, g, n_fock, parity);
    for (std::size_t k = 0; k < std::min(count, n_fock); ++k) {
      const double e = chain_eigenvalue(c, k);
      all.push_back({e, parity, chain_eigenvector(c, e)});
    }
  }
  std::stable_sort(all.begin(), all.end(), [](const Level& a, const Level& b) { return a.energy < b.energy; });
  if (all.size() > count) all.resize(count);
  return all;
}

inline double photon_number(const Level& l) {
  double s = 0.0;
  for (std::size_t n = 0; n < l.amps.size(); ++n) s += static_cast<double>(n) * l.amps[n] * l.amps[n];
  return s;
}

// <a| (a + a^dag) |b>; the quadrature flips parity, so same-parity pairs vanish.
inline double quadrature_element(const Level& a, const Level& b) {
  if (a.parity == b.parity) return 0.0;
  const std::size_t n = b.amps.size();
  double s = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    if (m >= 1) s += std::sqrt(static_cast<double>(m)) * a.amps[m - 1] * b.amps[m];
    if (m + 1 < n) s += std::sqrt(static_cast<double>(m + 1)) * a.amps[m + 1] * b.amps[m];
  }
  return s;
}

// Wide-band rate out of level i with flat unit response: sum over strictly
// lower levels of |<k|(a + a^dag)|i>|^2.
inline double flat_rate(const std::vector<Level>& levels, std::size_t i, double eps) {
  double s = 0.0;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (levels[i].energy - levels[k].energy > eps) {
      const double x = quadrature_element(levels[k], levels[i]);
      s += x * x;
    }
  }
  return s;
}

// Mirrors the truncation-doubling contract: drift relative to max(|E|, scale),
// recommended truncation = smaller member of the first converged pair.
inline std::size_t recommended_truncation(double w0, double wa, double g, std::size_t base, std::size_t levels,
                                          double tol, std::size_t max_fock) {
  std::vector<Level> previous = rabi_levels(w0, wa, g, base, levels);
  for (std::size_t n = 2 * base; n <= max_fock; n *= 2) {
    const std::vector<Level> current = rabi_levels(w0, wa, g, n, levels);
    double worst = 0.0;
    for (std::size_t k = 0; k < levels; ++k) {
      worst = std::max(worst, std::abs(current[k].energy - previous[k].energy) /
                                  std::max(std::abs(current[k].energy), w0));
    }
    if (worst < tol) return n / 2;
    previous = current;
  }
  throw std::runtime_error("oracle: no convergence below max_fock");
}

}  // namespace oracle
