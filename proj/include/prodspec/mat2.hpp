#ifndef PRODSPEC_MAT2_HPP
#define PRODSPEC_MAT2_HPP

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "prodspec/error.hpp"

namespace prodspec {

// Dense polynomial in the energy E, ascending coefficients. Trailing exact
// zeros are trimmed, so the leading coefficient is nonzero unless the
// polynomial is zero.
class EnergyPoly {
 public:
  static constexpr int kMaxDegree = 64;

  EnergyPoly() = default;
  explicit EnergyPoly(double c);
  explicit EnergyPoly(std::vector<double> ascending);

  static EnergyPoly variable();  // the polynomial E

  int degree() const { return coef_.empty() ? 0 : static_cast<int>(coef_.size()) - 1; }
  bool is_zero() const { return coef_.empty(); }
  bool is_constant() const { return coef_.size() <= 1; }
  const std::vector<double>& coefficients() const { return coef_; }
  double coefficient(int i) const;
  double leading() const { return coef_.empty() ? 0.0 : coef_.back(); }

  template <class S>
  S operator()(const S& E) const {
    S acc(0.0);
    for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) acc = acc * E + S(*it);
    return acc;
  }

  EnergyPoly derivative() const;

  EnergyPoly& operator+=(const EnergyPoly& o);
  EnergyPoly& operator-=(const EnergyPoly& o);
  EnergyPoly& operator*=(double s);

  friend EnergyPoly operator+(EnergyPoly a, const EnergyPoly& b) { return a += b; }
  friend EnergyPoly operator-(EnergyPoly a, const EnergyPoly& b) { return a -= b; }
  friend EnergyPoly operator-(EnergyPoly a) { return a *= -1.0; }
  friend EnergyPoly operator*(const EnergyPoly& a, const EnergyPoly& b);
  friend EnergyPoly operator*(double s, EnergyPoly a) { return a *= s; }
  friend bool operator==(const EnergyPoly&, const EnergyPoly&) = default;

  // Coefficient-wise comparison, tolerance relative to the largest coefficient.
  bool approx_equal(const EnergyPoly& o, double rel_tol) const;

 private:
  void trim();
  std::vector<double> coef_;
};

template <class T>
struct Mat2 {
  T a11, a12, a21, a22;

  static Mat2 identity() { return {T(1.0), T(0.0), T(0.0), T(1.0)}; }
  T trace() const { return a11 + a22; }
  T det() const { return a11 * a22 - a12 * a21; }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
            x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
  }
  friend Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {x.a11 + y.a11, x.a12 + y.a12, x.a21 + y.a21, x.a22 + y.a22};
  }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) {
    return {x.a11 - y.a11, x.a12 - y.a12, x.a21 - y.a21, x.a22 - y.a22};
  }
  friend Mat2 operator*(const T& s, const Mat2& x) {
    return {s * x.a11, s * x.a12, s * x.a21, s * x.a22};
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

using RealMat2 = Mat2<double>;
using ComplexMat2 = Mat2<std::complex<double>>;
using PolyMat2 = Mat2<EnergyPoly>;

// Products over words put the LAST letter's matrix leftmost:
// M(a_1 ... a_n) = M(a_n) ... M(a_1). Every product in the library follows it.
enum class ProductOrder { last_letter_leftmost };
inline constexpr ProductOrder kProductOrder = ProductOrder::last_letter_leftmost;

// [[E - value, -1], [1, 0]]
template <class T>
Mat2<T> transfer_matrix(double value, const T& E) {
  return {E - T(value), T(-1.0), T(1.0), T(0.0)};
}

template <class T>
Mat2<T> word_monodromy(std::span<const double> values, const T& E) {
  require(!values.empty(), "empty word");
  Mat2<T> m = transfer_matrix(values[0], E);
  for (std::size_t i = 1; i < values.size(); ++i) m = transfer_matrix(values[i], E) * m;
  return m;
}

// Monodromy with polynomial entries; word length is bounded by the degree cap.
PolyMat2 word_monodromy_poly(std::span<const double> values);

// S_0 = 0, S_1 = 1, S_{n+1}(x) = x S_n(x) - S_{n-1}(x); also S_{-1} = -1.
template <class T>
T chebyshev_s(int n, const T& x) {
  require(n >= -1, "chebyshev index must be >= -1");
  if (n == -1) return T(-1.0);
  T prev(0.0), cur(1.0);
  if (n == 0) return prev;
  for (int k = 1; k < n; ++k) {
    T next = x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

class ChebyshevTable {
 public:
  explicit ChebyshevTable(int max_n);
  int max_n() const { return static_cast<int>(polys_.size()) - 1; }
  const EnergyPoly& operator[](int n) const;
  double eval(int n, double x) const { return chebyshev_s(n, x); }

 private:
  std::vector<EnergyPoly> polys_;
};

inline double abs_value(double x) { return std::abs(x); }
inline double abs_value(const std::complex<double>& z) { return std::abs(z); }

template <class T>
double max_abs(const Mat2<T>& m) {
  return std::max(std::max(abs_value(m.a11), abs_value(m.a12)),
                  std::max(abs_value(m.a21), abs_value(m.a22)));
}

template <class T>
double frobenius_norm(const Mat2<T>& m) {
  auto sq = [](const T& v) { return abs_value(v) * abs_value(v); };
  return std::sqrt(sq(m.a11) + sq(m.a12) + sq(m.a21) + sq(m.a22));
}

// A^n = S_n(tr A) A - S_{n-1}(tr A) I for unimodular A.
template <class T>
Mat2<T> chebyshev_power(const Mat2<T>& A, int n) {
  require(n >= 0, "power must be nonnegative");
  if (abs_value(A.det() - T(1.0)) > 1e-8) throw ValidationError("not unimodular");
  const T t = A.trace();
  return chebyshev_s(n, t) * A - chebyshev_s(n - 1, t) * Mat2<T>::identity();
}

// True iff the monodromy traces of w and reverse(w) agree coefficient-wise.
bool trace_reversal_check(std::span<const double> values);

// Left-multiplied running product with overflow control: whenever the largest
// entry exceeds the threshold the matrix is divided by it and the log of the
// divisor is accumulated.
template <class T>
class RenormalizedProduct {
 public:
  static constexpr double kThreshold = 1e100;

  void push(const Mat2<T>& a) {
    m_ = a * m_;
    const double s = max_abs(m_);
    if (s > kThreshold) rescale(s);
  }
  void normalize() {
    const double s = max_abs(m_);
    if (s > 0.0) rescale(s);
  }
  // Forget the accumulated growth, keep only the direction.
  void reset_scale() {
    normalize();
    log_scale_ = 0.0;
  }
  const Mat2<T>& scaled() const { return m_; }
  double log_scale() const { return log_scale_; }
  double log_norm() const { return log_scale_ + std::log(frobenius_norm(m_)); }

 private:
  void rescale(double s) {
    const T inv(1.0 / s);
    m_ = inv * m_;
    log_scale_ += std::log(s);
  }
  Mat2<T> m_ = Mat2<T>::identity();
  double log_scale_ = 0.0;
};

}  // namespace prodspec

#endif  // PRODSPEC_MAT2_HPP
