// Reference computations used only by the tests. Nothing here calls the
// library code it is meant to check.
#ifndef PRODSPEC_TESTS_ORACLES_HPP
#define PRODSPEC_TESTS_ORACLES_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

using LMat = std::array<long double, 4>;  // row major

inline LMat lmul(const LMat& a, const LMat& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

// Plain long double product M(v_n) ... M(v_1), no rescaling.
inline LMat monodromy(const std::vector<double>& v, long double E) {
  LMat m{1, 0, 0, 1};
  for (double x : v) m = lmul({E - x, -1, 1, 0}, m);
  return m;
}

inline long double trace(const std::vector<double>& v, long double E) {
  const LMat m = monodromy(v, E);
  return m[0] + m[3];
}

// Band edges of a periodic potential as the eigenvalues of the periodic and
// antiperiodic truncations: sorted together they pair up into bands.
inline std::vector<std::pair<double, double>> band_edges(const std::vector<double>& v) {
  const int n = static_cast<int>(v.size());
  std::vector<double> ev;
  for (double sign : {1.0, -1.0}) {
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) H(i, i) = v[static_cast<std::size_t>(i)];
    if (n == 1) {
      H(0, 0) += 2.0 * sign;
    } else {
      for (int i = 0; i + 1 < n; ++i) H(i, i + 1) = H(i + 1, i) = 1.0;
      H(0, n - 1) += sign;
      H(n - 1, 0) += sign;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
    for (int i = 0; i < n; ++i) ev.push_back(es.eigenvalues()(i));
  }
  std::sort(ev.begin(), ev.end());
  std::vector<std::pair<double, double>> bands;
  for (std::size_t i = 0; i + 1 < ev.size(); i += 2) bands.emplace_back(ev[i], ev[i + 1]);
  return bands;
}

// Roots of x^2 + b x + c, ascending; empty if complex.
inline std::vector<double> quadratic_roots(double b, double c) {
  const double d = b * b - 4.0 * c;
  if (d < 0) return {};
  const double s = std::sqrt(d);
  const double q = -0.5 * (b + std::copysign(s, b));
  std::vector<double> r{q, c / q};
  if (q == 0.0) r = {0.0, -b};
  std::sort(r.begin(), r.end());
  return r;
}

// S_n(x) from the closed forms sin(n t)/sin t with x = 2 cos t, and the
// hyperbolic analogue for |x| > 2.
inline long double chebyshev_closed(int n, long double x) {
  if (std::fabs(x) < 2) {
    const long double t = std::acos(x / 2);
    return std::sin(n * t) / std::sin(t);
  }
  if (std::fabs(x) == 2) return (x > 0 ? 1 : ((n % 2 == 0) ? -1 : 1)) * static_cast<long double>(n);
  const long double t = std::acosh(std::fabs(x) / 2);
  const long double v = std::sinh(n * t) / std::sinh(t);
  return (x < 0 && n % 2 == 0) ? -v : v;
}

template <class M>
M power_by_squaring(M base, int n, const M& identity) {
  M r = identity;
  while (n > 0) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

// Toeplitz word w_k built from scratch: w_1 = b_1, w_{k+1} = w_k^{n_k} with
// its last letter set to b_{k+1}.
inline std::vector<int> toeplitz(const std::vector<std::pair<int, int>>& coding, int k) {
  std::vector<int> w{coding[0].first};
  for (int j = 1; j < k; ++j) {
    std::vector<int> next;
    for (int r = 0; r < coding[static_cast<std::size_t>(j - 1)].second; ++r) next.insert(next.end(), w.begin(), w.end());
    next.back() = coding[static_cast<std::size_t>(j)].first;
    w = std::move(next);
  }
  return w;
}

// Number of orbits of x -> x + m on Z_t, by walking them.
inline std::uint64_t rotation_orbits(std::uint64_t m, std::uint64_t t) {
  std::vector<char> seen(t, 0);
  std::uint64_t orbits = 0;
  for (std::uint64_t s = 0; s < t; ++s) {
    if (seen[s]) continue;
    ++orbits;
    std::uint64_t x = s;
    while (!seen[x]) {
      seen[x] = 1;
      x = (x + m) % t;
    }
  }
  return orbits;
}

// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace oracle

#endif  // PRODSPEC_TESTS_ORACLES_HPP
