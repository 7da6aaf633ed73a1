#ifndef PRODSPEC_INTERVALS_HPP
#define PRODSPEC_INTERVALS_HPP

#include <span>
#include <vector>

#include "prodspec/mat2.hpp"
#include "prodspec/parallel.hpp"

namespace prodspec {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Finite union of closed intervals, kept sorted and maximally merged:
// neighbours closer than kMergeGap are joined.
class IntervalUnion {
 public:
  static constexpr double kMergeGap = 1e-9;

  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Interval> raw);
  IntervalUnion(std::initializer_list<Interval> raw)
      : IntervalUnion(std::vector<Interval>(raw)) {}

  const std::vector<Interval>& intervals() const { return iv_; }
  std::size_t size() const { return iv_.size(); }
  bool empty() const { return iv_.empty(); }
  const Interval& operator[](std::size_t i) const { return iv_[i]; }

  double measure() const;
  bool contains(double x) const;
  // Distance from x to the set; +inf for the empty set.
  double distance(double x) const;
  bool intersects(const Interval& w) const;
  Interval hull() const;

  // Closure of window \ *this, zero-length pieces dropped.
  IntervalUnion gaps(const Interval& window) const;
  IntervalUnion intersect(const IntervalUnion& o) const;

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  std::vector<Interval> iv_;
};

IntervalUnion union_of(std::span<const IntervalUnion> us);
IntervalUnion union_of(const IntervalUnion& a, const IntervalUnion& b);

// sup over a in A of dist(a, B). Zero when A is empty.
double excess(const IntervalUnion& a, const IntervalUnion& b);
double hausdorff(const IntervalUnion& a, const IntervalUnion& b);

struct BandSpectrum {
  IntervalUnion bands;
  // Points where two bands meet with |delta| = 2 at a critical point.
  std::vector<double> touching_points;
  int raw_band_count = 0;
};

// {E : -2 <= delta(E) <= 2}. Real critical points of delta, found by a
// recursive derivative cascade, split the line into monotone pieces; on each
// piece the band is located by bisection to absolute accuracy tol.
BandSpectrum analyze_discriminant(const EnergyPoly& delta, double tol);
IntervalUnion spectrum_from_discriminant(const EnergyPoly& delta, double tol);

// All real roots of p inside [lo, hi], ascending, by the same cascade.
std::vector<double> real_roots(const EnergyPoly& p, double lo, double hi);

// Trace of the monodromy at real E. Entries are renormalized along the
// product; the result is clamped to +-1e300 when it is astronomically large,
// which callers only compare against +-2.
double discriminant_value(std::span<const double> values, double E);

// Eigenvalues of the Jacobi matrix with diagonal d and unit off-diagonal,
// by Sturm-count bisection, ascending.
std::vector<double> jacobi_eigenvalues(std::span<const double> diag, double tol,
                                       Exec exec = Exec::serial);

// Band spectrum of the periodic operator with one period of potential values.
// The Dirichlet eigenvalues of sites 1..N-1 separate the N bands, so each
// band is found by bisection inside its own segment. Works for any period.
BandSpectrum periodic_bands(std::span<const double> values, double tol,
                            Exec exec = Exec::serial);
IntervalUnion periodic_spectrum(std::span<const double> values, double tol,
                                Exec exec = Exec::serial);

}  // namespace prodspec

#endif  // PRODSPEC_INTERVALS_HPP
