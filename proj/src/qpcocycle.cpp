#include "prodspec/qpcocycle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "prodspec/error.hpp"

namespace prodspec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kCoefTol = 1e-14;

double wrap01(double x) {
  x -= std::floor(x);
  return x >= 1.0 ? 0.0 : x;
}

}  // namespace

TrigPoly TrigPoly::from_nonnegative(std::vector<cplx> c) {
  TrigPoly t;
  t.c_ = std::move(c);
  if (t.c_.empty()) t.c_.push_back(0.0);
  require(std::abs(t.c_[0].imag()) <= 1e-12, "mode 0 must be real for a real-valued component");
  t.c_[0] = t.c_[0].real();
  while (t.c_.size() > 1 && std::abs(t.c_.back()) <= kCoefTol) t.c_.pop_back();
  return t;
}

TrigPoly TrigPoly::from_modes(const std::vector<std::pair<int, cplx>>& modes) {
  int d = 0;
  for (const auto& [m, c] : modes) d = std::max(d, std::abs(m));
  std::vector<cplx> pos(static_cast<std::size_t>(d) + 1, 0.0), neg(static_cast<std::size_t>(d) + 1, 0.0);
  std::vector<bool> has_pos(pos.size(), false), has_neg(pos.size(), false);
  for (const auto& [m, c] : modes) {
    const std::size_t a = static_cast<std::size_t>(std::abs(m));
    if (m >= 0) {
      require(!has_pos[a], "mode " + std::to_string(m) + " given twice");
      pos[a] = c;
      has_pos[a] = true;
    } else {
      require(!has_neg[a], "mode " + std::to_string(m) + " given twice");
      neg[a] = c;
      has_neg[a] = true;
    }
  }
  for (std::size_t a = 1; a < pos.size(); ++a) {
    if (has_neg[a] && !has_pos[a]) pos[a] = std::conj(neg[a]);
    if (has_neg[a] && has_pos[a] && std::abs(neg[a] - std::conj(pos[a])) > 1e-12)
      throw ValidationError("coefficients of modes +-" + std::to_string(a) + " are not conjugate (component not real)");
  }
  return from_nonnegative(std::move(pos));
}

TrigPoly TrigPoly::constant(double c) { return from_nonnegative({c}); }

TrigPoly TrigPoly::cosine(double amplitude, double shift) { return from_nonnegative({shift, amplitude}); }

int TrigPoly::degree() const {
  for (std::size_t m = c_.size(); m-- > 1;)
    if (std::abs(c_[m]) > kCoefTol) return static_cast<int>(m);
  return 0;
}

cplx TrigPoly::coefficient(int m) const {
  const std::size_t a = static_cast<std::size_t>(std::abs(m));
  if (a >= c_.size()) return 0.0;
  return m >= 0 ? c_[a] : std::conj(c_[a]);
}

cplx TrigPoly::operator()(cplx z) const {
  const cplx w = std::exp(cplx(0.0, kTwoPi) * z);
  const cplx winv = 1.0 / w;
  cplx s = c_[0], wp = 1.0, wn = 1.0;
  for (std::size_t m = 1; m < c_.size(); ++m) {
    wp *= w;
    wn *= winv;
    s += c_[m] * wp + std::conj(c_[m]) * wn;
  }
  return s;
}

double TrigPoly::operator()(double x) const {
  double s = c_[0].real();
  for (std::size_t m = 1; m < c_.size(); ++m) {
    const double a = kTwoPi * static_cast<double>(m) * x;
    s += 2.0 * (c_[m].real() * std::cos(a) - c_[m].imag() * std::sin(a));
  }
  return s;
}

int TrigPolyTuple::total_degree() const {
  int d = 0;
  for (const TrigPoly& t : components) d += t.degree();
  return d;
}

bool TrigPolyTuple::has_constant_component() const {
  return std::any_of(components.begin(), components.end(), [](const TrigPoly& t) { return t.degree() == 0; });
}

double TrigPolyTuple::sup_norm_bound() const {
  double worst = 0.0;
  for (const TrigPoly& t : components) {
    double s = std::abs(t.coefficient(0));
    for (int m = 1; m <= t.degree(); ++m) s += 2.0 * std::abs(t.coefficient(m));
    worst = std::max(worst, s);
  }
  return std::abs(lambda) * worst;
}

TrigPolyTuple amo_with_background(double lambda, std::span<const double> background) {
  require(!background.empty(), "background needs at least one entry");
  TrigPolyTuple f;
  for (double c : background) f.components.push_back(TrigPoly::cosine(lambda, c));
  f.lambda = 1.0;
  return f;
}

cplx eval_sampling(const TrigPolyTuple& f, cplx z, int k) {
  const int p = f.p();
  require(p >= 1, "sampling function has no components");
  return f.lambda * f.components[static_cast<std::size_t>(((k % p) + p) % p)](z);
}

double eval_sampling(const TrigPolyTuple& f, double x, int k) {
  const int p = f.p();
  require(p >= 1, "sampling function has no components");
  return f.lambda * f.components[static_cast<std::size_t>(((k % p) + p) % p)](x);
}

PStepCocycle::PStepCocycle(TrigPolyTuple f_, const ContinuedFraction& cf, double energy)
    : PStepCocycle(std::move(f_), convergents(cf).back().value(), energy) {}

PStepCocycle::PStepCocycle(TrigPolyTuple f_, double alpha_, double energy) : f(std::move(f_)), alpha(alpha_), E(energy) {
  require(f.p() >= 1, "sampling function has no components");
}

ComplexMat2 one_step_matrix(const PStepCocycle& c, cplx x, int k) {
  const cplx v = eval_sampling(c.f, x + c.alpha, k + 1);
  return {c.E - v, -1.0, 1.0, 0.0};
}

ComplexMat2 pstep_matrix(const PStepCocycle& c, double x, double eps) {
  ComplexMat2 B = ComplexMat2::identity();
  for (int j = 1; j <= c.p(); ++j) {
    const cplx v = eval_sampling(c.f, cplx(x + j * c.alpha, eps), j);
    B = ComplexMat2{c.E - v, -1.0, 1.0, 0.0} * B;
  }
  return B;
}

double lyapunov(const PStepCocycle& c, double eps, std::size_t N, std::size_t burn_in, double x0) {
  require(N >= 1000, "orbit length must be >= 1000");
  const double step = wrap01(c.p() * c.alpha);
  double x = wrap01(x0);
  RenormalizedProduct<cplx> prod;
  for (std::size_t n = 0; n < burn_in; ++n) {
    prod.push(pstep_matrix(c, x, eps));
    x = wrap01(x + step);
  }
  prod.reset_scale();
  for (std::size_t n = 0; n < N; ++n) {
    prod.push(pstep_matrix(c, x, eps));
    x = wrap01(x + step);
  }
  const double L = prod.log_norm() / static_cast<double>(N);
  if (std::isnan(L)) throw NumericalError("numerical breakdown");
  return L;
}

double lyapunov_one_step(const PStepCocycle& c, double eps, std::size_t N, std::size_t burn_in, double x0) {
  require(N >= 1000, "orbit length must be >= 1000");
  const int p = c.p();
  double total = 0.0;
  for (int k0 = 0; k0 < p; ++k0) {
    double x = wrap01(x0);
    int k = k0;
    RenormalizedProduct<cplx> prod;
    const std::size_t burn = burn_in * static_cast<std::size_t>(p);
    const std::size_t steps = N * static_cast<std::size_t>(p);
    for (std::size_t n = 0; n < burn + steps; ++n) {
      if (n == burn) prod.reset_scale();
      prod.push(one_step_matrix(c, cplx(x, eps), k));
      x = wrap01(x + c.alpha);
      k = (k + 1) % p;
    }
    total += prod.log_norm() / static_cast<double>(steps);
  }
  const double L = total / p;
  if (std::isnan(L)) throw NumericalError("numerical breakdown");
  return L;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::subcritical: return "subcritical";
    case Verdict::critical: return "critical";
    case Verdict::supercritical: return "supercritical";
    case Verdict::uniformly_hyperbolic: return "uniformly-hyperbolic";
    case Verdict::undetermined: return "undetermined";
  }
  return "undetermined";
}

LyapunovProfile acceleration_profile(const PStepCocycle& c, std::span<const double> eps_grid, std::size_t N,
                                     std::size_t burn_in, double x0, Exec exec) {
  require(eps_grid.size() >= 5, "epsilon grid needs at least 5 points");
  require(std::is_sorted(eps_grid.begin(), eps_grid.end()) &&
              std::adjacent_find(eps_grid.begin(), eps_grid.end()) == eps_grid.end(),
          "epsilon grid must be strictly ascending");
  require(std::find(eps_grid.begin(), eps_grid.end(), 0.0) != eps_grid.end(), "epsilon grid must include 0");
  LyapunovProfile prof;
  prof.E = c.E;
  prof.p = c.p();
  prof.orbit_length = N;
  prof.x0 = x0;
  prof.epsilons.assign(eps_grid.begin(), eps_grid.end());
  prof.L_values = map_index<double>(exec, eps_grid.size(),
                                    [&](std::size_t i) { return lyapunov(c, eps_grid[i], N, burn_in, x0); });
  for (std::size_t i = 0; i + 1 < eps_grid.size(); ++i) {
    const double a = (prof.L_values[i + 1] - prof.L_values[i]) / (kTwoPi * (eps_grid[i + 1] - eps_grid[i]));
    prof.accelerations.push_back(a);
    prof.accelerations_per_site.push_back(a / c.p());
    prof.integer_distance.push_back(std::abs(a / c.p() - std::round(a / c.p())));
  }
  for (std::size_t i = 1; i + 1 < eps_grid.size(); ++i) {
    const double h0 = eps_grid[i] - eps_grid[i - 1], h1 = eps_grid[i + 1] - eps_grid[i];
    const double second = (prof.L_values[i + 1] - prof.L_values[i]) - (h1 / h0) * (prof.L_values[i] - prof.L_values[i - 1]);
    if (second < -0.02) prof.convexity_violations.push_back(static_cast<int>(i));
  }
  return prof;
}

HermanRadius herman_radius(const TrigPolyTuple& f, double E, double tol) {
  require(tol > 0.0, "tolerance must be positive");
  require(f.p() >= 1, "sampling function has no components");
  HermanRadius out;
  constexpr int kGrid = 1024;
  auto pred = [&](double eps) {
    for (int k = 0; k < f.p(); ++k)
      for (int j = 0; j < kGrid; ++j)
        if (std::abs(eval_sampling(f, cplx(static_cast<double>(j) / kGrid, eps), k) - E) <= 2.0) return true;
    return false;
  };
  if (!pred(0.0)) return out;
  if (std::all_of(f.components.begin(), f.components.end(), [](const TrigPoly& t) { return t.degree() == 0; }) ||
      f.lambda == 0.0) {
    out.degenerate = true;
    return out;
  }
  double lo = 0.0, hi = 0.125;
  while (pred(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e3) throw NumericalError("Herman radius search did not terminate");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (pred(mid))
      lo = mid;
    else
      hi = mid;
  }
  out.value = 0.5 * (lo + hi);
  return out;
}

IntervalUnion rational_approx_spectrum(const TrigPolyTuple& f, const Convergent& pq, double tol, int phases,
                                       Exec exec) {
  const int p = f.p();
  require(p >= 1, "sampling function has no components");
  require(pq.q >= 1, "convergent denominator must be >= 1");
  require(phases >= 1, "need at least one phase");
  if (pq.q * p > 2000) throw ValidationError("approximant period q*p = " + std::to_string(pq.q * p) + " exceeds cap 2000");
  const std::size_t N = static_cast<std::size_t>(pq.q * p);
  const auto parts = map_index<IntervalUnion>(exec, static_cast<std::size_t>(phases), [&](std::size_t j) {
    const double theta = static_cast<double>(j) / phases;
    std::vector<double> V(N);
    for (std::size_t n = 0; n < N; ++n) {
      const std::int64_t r = static_cast<std::int64_t>(n) * pq.p % pq.q;
      V[n] = eval_sampling(f, wrap01(theta + static_cast<double>(r) / static_cast<double>(pq.q)),
                           static_cast<int>(n % static_cast<std::size_t>(p)));
    }
    return periodic_spectrum(V, tol);
  });
  return union_of(parts);
}

Classification classify(const PStepCocycle& c, const ContinuedFraction& cf, const ClassifyConfig& cfg, Exec exec) {
  require(cfg.L_tol > 0.0 && cfg.eps_probe > 0.0 && cfg.probe_points >= 1, "classify tolerances must be positive");
  Classification out;
  if (c.f.has_constant_component()) {
    out.reason = "a component of f is constant; a vanishing component can break supercriticality";
    return out;
  }
  const int p = c.p();
  std::vector<Convergent> usable;
  for (const Convergent& pq : convergents(cf))
    if (pq.q <= cfg.max_q && pq.q * p <= 2000) usable.push_back(pq);
  require(usable.size() >= 2, "need two convergents within max_q for the spectrum margin");
  const Convergent last = usable.back(), prev = usable[usable.size() - 2];
  const IntervalUnion s_last = rational_approx_spectrum(c.f, last, cfg.spectrum_tol, cfg.phases, exec);
  const IntervalUnion s_prev = rational_approx_spectrum(c.f, prev, cfg.spectrum_tol, cfg.phases, exec);
  out.margin_used = std::max(cfg.margin, 3.0 * hausdorff(s_last, s_prev));
  out.distance_to_spectrum = s_last.distance(c.E);
  if (out.distance_to_spectrum > out.margin_used) {
    out.verdict = Verdict::uniformly_hyperbolic;
    out.reason = "energy is off the approximant spectrum by more than the margin";
    return out;
  }

  out.L0 = lyapunov(c, 0.0, cfg.N, cfg.burn_in, cfg.x0) / p;
  if (out.L0 > cfg.L_tol) {
    out.verdict = Verdict::supercritical;
    out.reason = "positive exponent on the spectrum";
    return out;
  }
  for (int i = 1; i <= cfg.probe_points; ++i) out.probe_eps.push_back(cfg.eps_probe * i / cfg.probe_points);
  out.probe_L = map_index<double>(exec, out.probe_eps.size(), [&](std::size_t i) {
    return lyapunov(c, out.probe_eps[i], cfg.N, cfg.burn_in, cfg.x0) / p;
  });
  if (std::all_of(out.probe_L.begin(), out.probe_L.end(), [&](double L) { return L <= cfg.L_tol; })) {
    out.verdict = Verdict::subcritical;
    out.reason = "exponent vanishes on the probed strip";
    return out;
  }
  const double slope = (out.probe_L[0] - out.L0) / (kTwoPi * out.probe_eps[0]);
  if (slope >= 0.5) {
    out.verdict = Verdict::critical;
    out.reason = "zero exponent that grows immediately off the real axis";
    return out;
  }
  out.reason = "exponent neither vanishes on the strip nor grows at once";
  return out;
}

}  // namespace prodspec
