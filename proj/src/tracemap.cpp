#include "prodspec/tracemap.hpp"

#include <algorithm>
#include <cmath>

#include "prodspec/error.hpp"
#include "prodspec/prodsys.hpp"

namespace prodspec {

DecoratedSampling::DecoratedSampling(std::vector<std::vector<double>> table, int period)
    : g(std::move(table)), p(period) {
  require(p >= 1, "period must be >= 1");
  require(!g.empty(), "sampling table needs at least one letter");
  for (const auto& row : g) require(static_cast<int>(row.size()) == p, "sampling table row must have p entries");
}

DecoratedSampling DecoratedSampling::separable(std::span<const double> letter_values,
                                               std::span<const double> background) {
  require(!background.empty(), "background needs at least one entry");
  std::vector<std::vector<double>> t;
  for (double a : letter_values) {
    std::vector<double> row;
    for (double c : background) row.push_back(a + c);
    t.push_back(std::move(row));
  }
  return DecoratedSampling(std::move(t), static_cast<int>(background.size()));
}

double DecoratedSampling::operator()(int letter, int residue) const {
  require(letter >= 0 && static_cast<std::size_t>(letter) < g.size(), "letter outside sampling table");
  return g[static_cast<std::size_t>(letter)][static_cast<std::size_t>(((residue % p) + p) % p)];
}

double DecoratedSampling::sup_norm() const {
  double m = 0.0;
  for (const auto& row : g)
    for (double v : row) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> decorated_values(std::span<const int> w, const DecoratedSampling& dec) {
  std::vector<double> v(w.size());
  for (std::size_t m = 0; m < w.size(); ++m) v[m] = dec(w[m], static_cast<int>((m + 1) % static_cast<std::size_t>(dec.p)));
  return v;
}

namespace {

using real = long double;

// Direct trace of the monodromy in extended precision, scaled by powers of 2.
real direct_trace(std::span<const double> values, double E, bool& huge) {
  real a11 = 1, a12 = 0, a21 = 0, a22 = 1;
  long exponent = 0;
  for (double v : values) {
    const real t = static_cast<real>(E) - static_cast<real>(v);
    const real b11 = t * a11 - a21, b12 = t * a12 - a22;
    a21 = a11;
    a22 = a12;
    a11 = b11;
    a12 = b12;
    const real m = std::max({std::fabs(a11), std::fabs(a12), std::fabs(a21), std::fabs(a22)});
    if (m > 1e300L) {
      int e = 0;
      std::frexp(m, &e);
      a11 = std::ldexp(a11, -e);
      a12 = std::ldexp(a12, -e);
      a21 = std::ldexp(a21, -e);
      a22 = std::ldexp(a22, -e);
      exponent += e;
    }
  }
  real tr = a11 + a22;
  huge = false;
  if (exponent > 0) {
    int e = 0;
    std::frexp(tr, &e);
    if (exponent + e > 600) {
      huge = true;
      return tr;
    }
    tr = std::ldexp(tr, static_cast<int>(exponent));
  }
  return tr;
}

// S_n(x) and S_{n-1}(x).
std::pair<real, real> chebyshev_pair(int n, real x) {
  real prev = 0, cur = 1;  // S_0, S_1
  if (n == 0) return {0, -1};
  for (int k = 1; k < n; ++k) {
    const real next = x * cur - prev;
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

int seed_level_or_throw(const CodingSequence& s, const DecoratedSampling& dec) {
  const int k0 = trace_seed_level(static_cast<std::uint64_t>(dec.p), s);
  if (k0 == 0) throw ValidationError("p not commensurate with coding");
  return k0;
}

struct RawOrbit {
  int k0;
  std::vector<real> x, y;  // levels k0..(k0 + size - 1)
  int escape_level = -1;
};

RawOrbit raw_orbit(const CodingSequence& s, const DecoratedSampling& dec, double E, int depth) {
  RawOrbit o;
  o.k0 = seed_level_or_throw(s, dec);
  require(depth >= o.k0, "depth below seed level k0 = " + std::to_string(o.k0));
  require(static_cast<std::size_t>(depth) <= s.depth(), "depth exceeds coding entries");
  require(s.alternating(), "trace map needs an alternating coding");
  // toeplitz_words at level k0 needs b_{k0+1}.
  require(static_cast<std::size_t>(o.k0) + 1 <= s.depth(), "coding too short for the seed level");
  const auto [w, v] = toeplitz_words(s, o.k0);
  bool hx = false, hy = false;
  real x = direct_trace(decorated_values(w, dec), E, hx);
  real y = direct_trace(decorated_values(v, dec), E, hy);
  for (int k = o.k0;; ++k) {
    if (hx || hy || std::fabs(x) > kTraceSaturation || std::fabs(y) > kTraceSaturation) {
      o.escape_level = k;
      break;
    }
    if (std::isnan(x) || std::isnan(y)) throw NumericalError("numerical breakdown in trace map");
    o.x.push_back(x);
    o.y.push_back(y);
    if (k == depth) break;
    const auto [sn, sn1] = chebyshev_pair(s.at(k).n, x);
    const real nx = sn * y - 2 * sn1;
    const real ny = sn * x - 2 * sn1;
    x = nx;
    y = ny;
  }
  return o;
}

}  // namespace

TraceOrbit trace_orbit(const CodingSequence& s, const DecoratedSampling& dec, double E, int depth) {
  const RawOrbit r = raw_orbit(s, dec, E, depth);
  TraceOrbit o;
  o.E = E;
  o.k0 = r.k0;
  o.escape_level = r.escape_level;
  for (int k = r.k0; k <= depth; ++k) {
    TracePair tp;
    tp.k = k;
    const std::size_t i = static_cast<std::size_t>(k - r.k0);
    if (i < r.x.size()) {
      tp.x = static_cast<double>(r.x[i]);
      tp.y = static_cast<double>(r.y[i]);
    } else {
      tp.saturated = true;
    }
    o.pairs.push_back(tp);
  }
  return o;
}

double TraceMask::measure() const {
  const std::size_t n = grid.size();
  if (n < 2) return 0.0;
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!masked[i]) continue;
    const double lo = i == 0 ? grid[0] : 0.5 * (grid[i - 1] + grid[i]);
    const double hi = i + 1 == n ? grid[n - 1] : 0.5 * (grid[i] + grid[i + 1]);
    m += hi - lo;
  }
  return m;
}

std::size_t TraceMask::count() const { return static_cast<std::size_t>(std::count(masked.begin(), masked.end(), true)); }

TraceMask toeplitz_spectrum_mask(const CodingSequence& s, const DecoratedSampling& dec,
                                 std::span<const double> grid, int k_min, int k_max, Exec exec) {
  const int k0 = seed_level_or_throw(s, dec);
  require(k0 <= k_min && k_min <= k_max && k_max <= 40, "need k0 <= k_min <= k_max <= 40 (k0 = " + std::to_string(k0) + ")");
  TraceMask mask;
  mask.grid.assign(grid.begin(), grid.end());
  mask.k_min = k_min;
  mask.k_max = k_max;
  const auto flags = map_index<char>(exec, grid.size(), [&](std::size_t i) -> char {
    const RawOrbit r = raw_orbit(s, dec, grid[i], k_max);
    for (int k = k_min; k <= k_max; ++k) {
      const std::size_t j = static_cast<std::size_t>(k - r.k0);
      if (j >= r.x.size()) break;  // escaped: |x| stays large
      if (std::fabs(r.x[j]) <= 2) return 1;
    }
    return 0;
  });
  mask.masked.assign(flags.begin(), flags.end());
  return mask;
}

CollisionReport trace_collision_diagnostic(const CodingSequence& s, const DecoratedSampling& dec, double E,
                                           int depth) {
  const RawOrbit r = raw_orbit(s, dec, E, depth);
  CollisionReport rep;
  rep.E = E;
  rep.escape_level = r.escape_level;
  real sum = 0;
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    const int k = r.k0 + static_cast<int>(i);
    sum += r.x[i] * r.x[i];
    rep.partial_sums.push_back(static_cast<double>(sum));
    if (!rep.excluded && std::fabs(r.x[i] - r.y[i]) < 1e-9) {
      rep.excluded = true;
      rep.collision_level = k;
    }
    if (k < depth) {
      const real sn = chebyshev_pair(s.at(k).n, r.x[i]).first;
      rep.gap_factors.push_back(static_cast<double>(std::fabs(sn)));
      if (i + 1 < r.x.size()) {
        const real lhs = std::fabs(r.x[i + 1] - r.y[i + 1]);
        const real rhs = std::fabs(sn) * std::fabs(r.x[i] - r.y[i]);
        // Relative to the size of the traces themselves: x' - y' is a
        // difference of two computed numbers of that size.
        const real scale = std::max({real(1), lhs, rhs, std::fabs(r.x[i + 1]), std::fabs(r.y[i + 1])});
        rep.difference_residuals.push_back(static_cast<double>(std::fabs(lhs - rhs) / scale));
      }
    }
  }
  return rep;
}

}  // namespace prodspec
