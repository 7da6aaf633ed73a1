#include "prodspec/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "prodspec/error.hpp"

namespace prodspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Smallest point (up to tol) where pred switches from false to true on [l, r],
// assuming pred(l) is false and pred(r) is true.
template <class Pred>
double bisect_switch(double l, double r, double tol, Pred&& pred) {
  for (int it = 0; it < 2000 && r - l > tol; ++it) {
    const double m = 0.5 * (l + r);
    if (m <= l || m >= r) break;
    if (pred(m))
      r = m;
    else
      l = m;
  }
  return 0.5 * (l + r);
}

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

IntervalUnion::IntervalUnion(std::vector<Interval> raw) {
  for (const Interval& iv : raw) {
    if (std::isnan(iv.lo) || std::isnan(iv.hi)) throw ValidationError("interval endpoint is NaN");
    require(iv.lo <= iv.hi, "interval with lo > hi");
  }
  std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  for (const Interval& iv : raw) {
    if (!iv_.empty() && iv.lo - iv_.back().hi < kMergeGap)
      iv_.back().hi = std::max(iv_.back().hi, iv.hi);
    else
      iv_.push_back(iv);
  }
}

double IntervalUnion::measure() const {
  double m = 0.0;
  for (const Interval& iv : iv_) m += iv.length();
  return m;
}

bool IntervalUnion::contains(double x) const {
  auto it = std::upper_bound(iv_.begin(), iv_.end(), x,
                             [](double v, const Interval& iv) { return v < iv.lo; });
  if (it == iv_.begin()) return false;
  --it;
  return x <= it->hi;
}

double IntervalUnion::distance(double x) const {
  if (iv_.empty()) return kInf;
  auto it = std::upper_bound(iv_.begin(), iv_.end(), x,
                             [](double v, const Interval& iv) { return v < iv.lo; });
  double d = kInf;
  if (it != iv_.end()) d = std::min(d, it->lo - x);
  if (it != iv_.begin()) {
    --it;
    d = std::min(d, x <= it->hi ? 0.0 : x - it->hi);
  }
  return d;
}

bool IntervalUnion::intersects(const Interval& w) const {
  for (const Interval& iv : iv_)
    if (iv.hi >= w.lo && iv.lo <= w.hi) return true;
  return false;
}

Interval IntervalUnion::hull() const {
  require(!iv_.empty(), "hull of empty interval union");
  return {iv_.front().lo, iv_.back().hi};
}

IntervalUnion IntervalUnion::gaps(const Interval& window) const {
  std::vector<Interval> out;
  double cursor = window.lo;
  for (const Interval& iv : iv_) {
    if (iv.hi < window.lo) continue;
    if (iv.lo > window.hi) break;
    if (iv.lo > cursor) out.push_back({cursor, iv.lo});
    cursor = std::max(cursor, iv.hi);
  }
  if (cursor < window.hi) out.push_back({cursor, window.hi});
  IntervalUnion r;
  for (const Interval& iv : out)
    if (iv.hi > iv.lo) r.iv_.push_back(iv);
  return r;
}

IntervalUnion IntervalUnion::intersect(const IntervalUnion& o) const {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < iv_.size() && j < o.iv_.size()) {
    const double lo = std::max(iv_[i].lo, o.iv_[j].lo);
    const double hi = std::min(iv_[i].hi, o.iv_[j].hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (iv_[i].hi < o.iv_[j].hi)
      ++i;
    else
      ++j;
  }
  return IntervalUnion(std::move(out));
}

IntervalUnion union_of(std::span<const IntervalUnion> us) {
  std::vector<Interval> all;
  for (const IntervalUnion& u : us) all.insert(all.end(), u.intervals().begin(), u.intervals().end());
  return IntervalUnion(std::move(all));
}

IntervalUnion union_of(const IntervalUnion& a, const IntervalUnion& b) {
  const IntervalUnion both[2] = {a, b};
  return union_of(std::span<const IntervalUnion>(both, 2));
}

double excess(const IntervalUnion& a, const IntervalUnion& b) {
  if (a.empty()) return 0.0;
  if (b.empty()) return kInf;
  double worst = 0.0;
  const auto& bi = b.intervals();
  for (const Interval& iv : a.intervals()) {
    worst = std::max({worst, b.distance(iv.lo), b.distance(iv.hi)});
    // The farthest point of iv from b inside a bounded gap of b sits at the
    // gap midpoint, clamped to iv.
    for (std::size_t k = 0; k + 1 < bi.size(); ++k) {
      const double g1 = bi[k].hi, g2 = bi[k + 1].lo;
      if (g2 < iv.lo) continue;
      if (g1 > iv.hi) break;
      const double m = std::clamp(0.5 * (g1 + g2), iv.lo, iv.hi);
      worst = std::max(worst, b.distance(m));
    }
  }
  return worst;
}

double hausdorff(const IntervalUnion& a, const IntervalUnion& b) {
  return std::max(excess(a, b), excess(b, a));
}

std::vector<double> real_roots(const EnergyPoly& p, double lo, double hi) {
  std::vector<double> roots;
  if (p.is_constant()) return roots;
  if (p.degree() == 1) {
    const double r = -p.coefficient(0) / p.coefficient(1);
    if (lo <= r && r <= hi) roots.push_back(r);
    return roots;
  }
  std::vector<double> pts{lo};
  for (double c : real_roots(p.derivative(), lo, hi))
    if (c > pts.back()) pts.push_back(c);
  if (hi > pts.back()) pts.push_back(hi);

  auto add = [&](double r) {
    if (roots.empty() || r > roots.back()) roots.push_back(r);
  };
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double u = pts[i], v = pts[i + 1];
    const double fu = p(u), fv = p(v);
    if (fu == 0.0) {
      add(u);
      continue;
    }
    if (fv == 0.0 || sign_of(fu) == sign_of(fv)) continue;
    const int su = sign_of(fu);
    add(bisect_switch(u, v, 0.0, [&](double x) { return sign_of(p(x)) != su; }));
  }
  if (p(hi) == 0.0) add(hi);
  return roots;
}

BandSpectrum analyze_discriminant(const EnergyPoly& delta, double tol) {
  if (delta.is_constant()) throw ValidationError("degenerate discriminant");
  require(tol > 0.0, "tolerance must be positive");

  // Cauchy bound for the roots of delta -+ 2.
  const int n = delta.degree();
  double big = std::abs(delta.coefficient(0)) + 2.0;
  for (int i = 1; i < n; ++i) big = std::max(big, std::abs(delta.coefficient(i)));
  const double R = 1.0 + big / std::abs(delta.leading());

  std::vector<double> pts{-R};
  for (double c : real_roots(delta.derivative(), -R, R))
    if (c > pts.back()) pts.push_back(c);
  if (R > pts.back()) pts.push_back(R);

  std::vector<Interval> raw;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double u = pts[i], v = pts[i + 1];
    const double s = delta(v) >= delta(u) ? 1.0 : -1.0;
    auto g = [&](double x) { return s * delta(x); };
    const double gu = g(u), gv = g(v);
    if (gv < -2.0 || gu > 2.0) continue;
    const double a = gu >= -2.0 ? u : bisect_switch(u, v, tol, [&](double x) { return g(x) >= -2.0; });
    const double b = gv <= 2.0 ? v : bisect_switch(a, v, tol, [&](double x) { return g(x) > 2.0; });
    if (a <= b) raw.push_back({a, b});
  }

  BandSpectrum out;
  out.raw_band_count = static_cast<int>(raw.size());
  for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
    if (raw[i + 1].lo - raw[i].hi > IntervalUnion::kMergeGap) continue;
    const double c = 0.5 * (raw[i].hi + raw[i + 1].lo);
    if (std::abs(std::abs(delta(c)) - 2.0) <= 1e-6) out.touching_points.push_back(c);
  }
  out.bands = IntervalUnion(std::move(raw));
  return out;
}

IntervalUnion spectrum_from_discriminant(const EnergyPoly& delta, double tol) {
  return analyze_discriminant(delta, tol).bands;
}

double discriminant_value(std::span<const double> values, double E) {
  require(!values.empty(), "empty word");
  double a11 = 1.0, a12 = 0.0, a21 = 0.0, a22 = 1.0;
  long exponent = 0;  // the true product is 2^exponent times the stored one
  for (double v : values) {
    const double t = E - v;
    const double b11 = t * a11 - a21;
    const double b12 = t * a12 - a22;
    a21 = a11;
    a22 = a12;
    a11 = b11;
    a12 = b12;
    const double m = std::max({std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)});
    if (m > 0x1p300) {
      int e = 0;
      std::frexp(m, &e);
      a11 = std::ldexp(a11, -e);
      a12 = std::ldexp(a12, -e);
      a21 = std::ldexp(a21, -e);
      a22 = std::ldexp(a22, -e);
      exponent += e;
    }
  }
  const double tr = a11 + a22;
  if (std::isnan(tr)) throw NumericalError("numerical breakdown in discriminant");
  if (exponent == 0 || tr == 0.0) return tr;
  int e = 0;
  std::frexp(tr, &e);
  if (exponent + e > 996) return std::copysign(1e300, tr);
  return std::ldexp(tr, static_cast<int>(exponent));
}

namespace {

// Number of eigenvalues below x (Sturm sequence of LDL^T pivots).
int sturm_count(std::span<const double> d, double x) {
  int c = 0;
  double q = d[0] - x;
  if (q < 0.0) ++c;
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (std::abs(q) < 1e-300) q = -1e-300;
    q = d[i] - x - 1.0 / q;
    if (q < 0.0) ++c;
  }
  return c;
}

}  // namespace

std::vector<double> jacobi_eigenvalues(std::span<const double> diag, double tol, Exec exec) {
  if (diag.empty()) return {};
  require(tol >= 0.0, "tolerance must be nonnegative");
  const auto [mn, mx] = std::minmax_element(diag.begin(), diag.end());
  const double lo = *mn - 2.0 - 1e-9, hi = *mx + 2.0 + 1e-9;
  // Never bisect below a few ulps of the spectral range.
  const double eps = std::max(tol, 4e-16 * (std::abs(lo) + std::abs(hi)));
  return map_index<double>(exec, diag.size(), [&](std::size_t k) {
    return bisect_switch(lo, hi, eps, [&](double x) {
      return sturm_count(diag, x) > static_cast<int>(k);
    });
  });
}

BandSpectrum periodic_bands(std::span<const double> values, double tol, Exec exec) {
  require(!values.empty(), "empty word");
  require(tol > 0.0, "tolerance must be positive");
  const std::size_t N = values.size();
  BandSpectrum out;
  if (N == 1) {
    out.bands = IntervalUnion{{values[0] - 2.0, values[0] + 2.0}};
    out.raw_band_count = 1;
    return out;
  }
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  std::vector<double> cut{*mn - 2.5};
  for (double mu : jacobi_eigenvalues(values.first(N - 1), 0.0, exec)) cut.push_back(mu);
  cut.push_back(*mx + 2.5);

  // In segment j (0-based) the sign pattern of the discriminant makes
  // s * delta run from <= -2 to >= 2, with s = (-1)^(N-1-j).
  struct Slot {
    Interval band;
    bool ok = false;
  };
  const auto slots = map_index<Slot>(exec, N, [&](std::size_t j) {
    const double s = ((N - 1 - j) % 2 == 0) ? 1.0 : -1.0;
    auto h = [&](double x) { return s * discriminant_value(values, x); };
    const double u = cut[j], v = cut[j + 1];
    const double hu = h(u), hv = h(v);
    Slot slot;
    if (hu > 2.0 || hv < -2.0) return slot;
    // No endpoint shortcuts: a Dirichlet value at a gap edge reads |delta| = 2
    // but belongs to the neighbouring band.
    const double a = bisect_switch(u, v, tol, [&](double x) { return h(x) >= -2.0; });
    const double b = bisect_switch(a, v, tol, [&](double x) { return h(x) > 2.0; });
    if (a <= b) slot = {{a, b}, true};
    return slot;
  });

  std::vector<Interval> raw;
  for (const Slot& s : slots)
    if (s.ok) raw.push_back(s.band);
  out.raw_band_count = static_cast<int>(raw.size());
  for (std::size_t i = 0; i + 1 < raw.size(); ++i)
    if (raw[i + 1].lo - raw[i].hi <= IntervalUnion::kMergeGap)
      out.touching_points.push_back(0.5 * (raw[i].hi + raw[i + 1].lo));
  out.bands = IntervalUnion(std::move(raw));
  return out;
}

IntervalUnion periodic_spectrum(std::span<const double> values, double tol, Exec exec) {
  return periodic_bands(values, tol, exec).bands;
}

}  // namespace prodspec
