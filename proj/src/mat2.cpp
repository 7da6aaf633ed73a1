#include "prodspec/mat2.hpp"

#include <algorithm>
#include <string>

namespace prodspec {

EnergyPoly::EnergyPoly(double c) : coef_{c} { trim(); }

EnergyPoly::EnergyPoly(std::vector<double> ascending) : coef_(std::move(ascending)) {
  trim();
  require(degree() <= kMaxDegree,
          "polynomial degree " + std::to_string(degree()) + " exceeds cap " +
              std::to_string(kMaxDegree));
}

EnergyPoly EnergyPoly::variable() { return EnergyPoly(std::vector<double>{0.0, 1.0}); }

void EnergyPoly::trim() {
  while (!coef_.empty() && coef_.back() == 0.0) coef_.pop_back();
}

double EnergyPoly::coefficient(int i) const {
  if (i < 0 || i >= static_cast<int>(coef_.size())) return 0.0;
  return coef_[static_cast<std::size_t>(i)];
}

EnergyPoly EnergyPoly::derivative() const {
  std::vector<double> d;
  for (std::size_t i = 1; i < coef_.size(); ++i) d.push_back(static_cast<double>(i) * coef_[i]);
  return EnergyPoly(std::move(d));
}

EnergyPoly& EnergyPoly::operator+=(const EnergyPoly& o) {
  if (o.coef_.size() > coef_.size()) coef_.resize(o.coef_.size(), 0.0);
  for (std::size_t i = 0; i < o.coef_.size(); ++i) coef_[i] += o.coef_[i];
  trim();
  return *this;
}

EnergyPoly& EnergyPoly::operator-=(const EnergyPoly& o) {
  if (o.coef_.size() > coef_.size()) coef_.resize(o.coef_.size(), 0.0);
  for (std::size_t i = 0; i < o.coef_.size(); ++i) coef_[i] -= o.coef_[i];
  trim();
  return *this;
}

EnergyPoly& EnergyPoly::operator*=(double s) {
  for (double& c : coef_) c *= s;
  trim();
  return *this;
}

EnergyPoly operator*(const EnergyPoly& a, const EnergyPoly& b) {
  if (a.is_zero() || b.is_zero()) return EnergyPoly();
  std::vector<double> r(a.coef_.size() + b.coef_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coef_.size(); ++i)
    for (std::size_t j = 0; j < b.coef_.size(); ++j) r[i + j] += a.coef_[i] * b.coef_[j];
  return EnergyPoly(std::move(r));
}

bool EnergyPoly::approx_equal(const EnergyPoly& o, double rel_tol) const {
  const std::size_t n = std::max(coef_.size(), o.coef_.size());
  double scale = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    scale = std::max({scale, std::abs(coefficient(static_cast<int>(i))),
                      std::abs(o.coefficient(static_cast<int>(i)))});
  for (std::size_t i = 0; i < n; ++i) {
    const int k = static_cast<int>(i);
    if (std::abs(coefficient(k) - o.coefficient(k)) > rel_tol * scale) return false;
  }
  return true;
}

PolyMat2 word_monodromy_poly(std::span<const double> values) {
  require(static_cast<int>(values.size()) <= EnergyPoly::kMaxDegree,
          "word too long for polynomial monodromy (length " + std::to_string(values.size()) +
              ", cap " + std::to_string(EnergyPoly::kMaxDegree) + ")");
  return word_monodromy(values, EnergyPoly::variable());
}

ChebyshevTable::ChebyshevTable(int max_n) {
  require(max_n >= 0 && max_n <= EnergyPoly::kMaxDegree + 1, "chebyshev table size out of range");
  const EnergyPoly x = EnergyPoly::variable();
  polys_.push_back(EnergyPoly());
  if (max_n >= 1) polys_.push_back(EnergyPoly(1.0));
  for (int n = 2; n <= max_n; ++n)
    polys_.push_back(x * polys_[static_cast<std::size_t>(n - 1)] - polys_[static_cast<std::size_t>(n - 2)]);
}

const EnergyPoly& ChebyshevTable::operator[](int n) const {
  require(n >= 0 && n <= max_n(), "chebyshev index out of table range");
  return polys_[static_cast<std::size_t>(n)];
}

bool trace_reversal_check(std::span<const double> values) {
  std::vector<double> rev(values.rbegin(), values.rend());
  const EnergyPoly t1 = word_monodromy_poly(values).trace();
  const EnergyPoly t2 = word_monodromy_poly(rev).trace();
  return t1.approx_equal(t2, 1e-12);
}

}  // namespace prodspec
